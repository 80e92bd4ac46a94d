use std::fmt::Display;

use tate_core::fgl_tate::{Form, FormalGroupLaw, TateModule};
use tate_core::fock::{
    self, alpha_apply, basis_upto, FockSpace, FockVector, Mode,
};
use tate_core::givental::{full_rank_over_qt, HodgeSpace, TPoly, VecSeries};
use tate_core::half_spin::{
    comparison_scalar, embed, gamma_series, gamma_series_or_zero, kappa, xsymplectic,
};
use tate_core::literal::{
    format_partition, parse_grid, parse_half, parse_partition, parse_scalar, parse_series,
    parse_window,
};
use tate_core::nil_group::NilLaurentElement;
use tate_core::{scalars, HalfInt, PiHalf, Rat, Ring, Scalar, Series, Window};

use crate::{gen, oracles};

/// Counts checks and keeps the first few failures.
#[derive(Default)]
pub struct Check {
    pub count: usize,
    pub failures: Vec<String>,
}

impl Check {
    pub fn ensure(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }

    /// Records an error as a failure and returns `None`.
    pub fn ok<T, E: Display>(&mut self, r: Result<T, E>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.ensure(false, || format!("{what}: {e}"));
                None
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.count > 0
    }
}

pub fn residue_boundary(c: &mut Check) {
    let laws = [
        (Some(Rat::int(1)), FormalGroupLaw::multiplicative(Rat::int(1), 12)),
        (Some(Rat::int(2)), FormalGroupLaw::multiplicative(Rat::int(2), 12)),
        (None, FormalGroupLaw::additive(12)),
    ];
    for (beta, law) in laws {
        let Some(t) = c.ok(TateModule::new(law, 8), "module") else { return };
        for k in 0..=8u32 {
            let want = match &beta {
                Some(b) => oracles::geometric(b, k),
                None if k == 0 => Rat::one(),
                None => Rat::zero(),
            };
            let f = t.monomial(-(k as i32) - 1).unwrap();
            if let Some(b) = c.ok(t.boundary_coefficients(&f, 0), "boundary") {
                c.ensure(b[0] == Scalar::rat(want.clone(), 1), || {
                    format!("beta {beta:?}, k {k}: b0 = {}, oracle {want}", b[0])
                });
            }
        }
    }
}

pub fn symplectic_polarization(c: &mut Check) {
    let Some(t) = c.ok(TateModule::new(FormalGroupLaw::additive(12), 7), "module") else { return };
    let Some(g) = c.ok(t.gram(Form::Symplectic, -8, 7), "gram") else { return };
    let Some(q) = tate_core::linalg::to_rational(&g) else {
        c.ensure(false, || "Gram matrix is not rational".into());
        return;
    };
    for (a, j) in (-8..=7).enumerate() {
        for (b, k) in (-8..=7).enumerate() {
            let oracle = if j + k == -1 {
                Rat::int(if j % 2 == 0 { 1 } else { -1 })
            } else {
                Rat::zero()
            };
            c.ensure(q[a][b] == oracle, || format!("{{e^{j}, e^{k}}} = {}, oracle {oracle}", q[a][b]));
            c.ensure(q[a][b] == -&q[b][a], || format!("not antisymmetric at ({j},{k})"));
            if (j >= 0) == (k >= 0) {
                c.ensure(q[a][b].is_zero(), || format!("isotropy fails at ({j},{k})"));
            }
        }
    }
    let r = oracles::rank(&q);
    c.ensure(r == 16, || format!("rank {r}, want 16"));
}

fn element(c: &mut Check, s: Series) -> Option<NilLaurentElement> {
    c.ok(NilLaurentElement::validate(s), "validate")
}

pub fn group_laws(c: &mut Check) {
    let mut r = gen::rng(3);
    let ring = Ring::nil(3).unwrap();
    let raw: Vec<Series> = (0..100).map(|_| gen::nil_element_supported(&mut r, 3, -6, -2, 12, 0.3)).collect();
    let results = tate_core::par::map_range(raw.len(), |i| {
        let mut c = Check::default();
        let a = element(&mut c, raw[i].clone());
        let b = element(&mut c, raw[(i + 1) % raw.len()].clone());
        let d = element(&mut c, raw[(i + 2) % raw.len()].clone());
        let (Some(a), Some(b), Some(d)) = (a, b, d) else { return c };
        // Composites are compared as series on the windows they certify; a
        // nilpotent x^-k coefficient costs precision, so a composite need
        // not certify its own x^1 coefficient.
        let (a, b, d) = (a.series(), b.series(), d.series());
        // x with its known zeros down to x^-6
        let e = Series::power(ring, HalfInt::ONE, HalfInt::int(12))
            .unwrap()
            .with_window(Window::ints(-6, 12).unwrap())
            .unwrap();
        let agree = |c: &mut Check, x: &Series, y: &Series, what: &str| {
            let w = x.window().intersect(&y.window());
            c.ensure(w.is_ok(), || format!("{what}: no common window for {x} and {y}"));
            c.ensure(x.agrees_with(y), || format!("{what}: {x} vs {y}"));
        };
        if let Some(x) = c.ok(a.compose(&e), "a∘e") {
            agree(&mut c, &x, a, "right identity");
        }
        if let Some(x) = c.ok(e.compose(a), "e∘a") {
            agree(&mut c, &x, a, "left identity");
        }
        if let Some(inv) = c.ok(a.reversion(), "inverse") {
            for (x, what) in [(a.compose(&inv), "a∘a⁻¹"), (inv.compose(a), "a⁻¹∘a")] {
                if let Some(x) = c.ok(x, what) {
                    agree(&mut c, &x, &e, what);
                    c.ensure(x.window().contains(HalfInt::ONE), || format!("{what} does not certify x^1: {x}"));
                }
            }
        }
        let l = a.compose(b).and_then(|ab| ab.compose(d));
        let rr = b.compose(d).and_then(|bd| a.compose(&bd));
        if let (Some(l), Some(rr)) = (c.ok(l, "(ab)c"), c.ok(rr, "a(bc)")) {
            agree(&mut c, &l, &rr, "associativity");
        }
        c
    });
    merge(c, results);
}

fn merge(c: &mut Check, parts: Vec<Check>) {
    for p in parts {
        c.count += p.count;
        for f in p.failures {
            if c.failures.len() < 5 {
                c.failures.push(f);
            }
        }
    }
}

pub fn symplectic_action(c: &mut Check) {
    let mut r = gen::rng(4);
    let triples: Vec<(Series, Series, Series)> = (0..50)
        .map(|_| {
            (
                gen::laurent(&mut r, 3, -2, 3, 10),
                gen::laurent(&mut r, 3, -2, 3, 10),
                gen::nil_element(&mut r, 3, -1, 16, 0.5),
            )
        })
        .collect();
    let parts = tate_core::par::map(&triples, |(u, v, g)| {
        let mut c = Check::default();
        let Some(g) = element(&mut c, g.clone()) else { return c };
        let lhs = g
            .act(u)
            .and_then(|gu| gu.mul(&g.act(v)?.derivative()))
            .and_then(|p| p.residue());
        let rhs = u.mul(&v.derivative()).and_then(|p| p.residue());
        if let (Some(l), Some(rh)) = (c.ok(lhs, "res(act u · d act v)"), c.ok(rhs, "res(u dv)")) {
            c.ensure(l == rh, || format!("{l} vs {rh}"));
        }
        c
    });
    merge(c, parts);
}

fn widen(s: Series, hi: i32) -> Series {
    let w = Window::new(s.window().lo, HalfInt::int(hi)).unwrap();
    s.with_window(w).unwrap()
}

fn tate_value(t: &TateModule, j: i32, k: i32) -> Rat {
    t.symplectic(&t.monomial(j).unwrap(), &t.monomial(k).unwrap())
        .unwrap()
        .as_rational()
        .unwrap()
}

pub fn divided_powers(c: &mut Check) {
    for d in -9..=9 {
        let s = HalfInt::from_doubled(d);
        let hi = s.max(HalfInt::ZERO);
        let (Some(g), Some(g1)) = (
            c.ok(gamma_series_or_zero(s, hi), "γ_s"),
            c.ok(gamma_series_or_zero(s - HalfInt::ONE, hi), "γ_{s-1}"),
        ) else {
            continue;
        };
        c.ensure(g.derivative().agrees_with(&g1), || format!("γ_{s}' = {}, γ_{{s-1}} = {g1}", g.derivative()));
        // 1/Γ(1+s) against the Γ-recursion oracle
        let want = oracles::recip_gamma(d + 2);
        let got = g.coefficient(s).unwrap().layer(0).clone();
        c.ensure(got == want, || format!("1/Γ(1+{s}) = {got}, oracle {want}"));
        if !want.is_zero() {
            c.ensure(gamma_series(s, hi).is_ok(), || format!("γ_{s} should be defined"));
        }
    }

    // κ from the oracle: {γ_{-j-1/2}, γ_{-k-1/2}} / (−1)^j at j + k = −1
    let oracle_kappa = |j: i32| {
        let k = -1 - j;
        let a = oracles::recip_gamma(1 - 2 * j);
        let b = oracles::recip_gamma(1 - 2 * k);
        let sign = if j % 2 == 0 { 1 } else { -1 };
        (&a * &b).scale(&Rat::new(sign * (-2 * k as i64 - 1), 2))
    };
    let reference = oracle_kappa(0);
    c.ensure(reference == PiHalf::monomial(Rat::one(), HalfInt::int(-1)), || {
        format!("oracle κ = {reference}, expected π^-1")
    });
    c.ensure(kappa() == reference, || format!("κ = {}, oracle {reference}", kappa()));
    let t = TateModule::new(FormalGroupLaw::additive(12), 5).unwrap();
    let e = |k: i32| widen(embed(&Series::power(Ring::PLAIN, HalfInt::int(k), HalfInt::int(k)).unwrap()).unwrap(), 8);
    let k_scalar = Scalar::from_pihalf(reference.clone(), 1);
    for j in -6..=5 {
        if (-6..=5).contains(&(-1 - j)) {
            c.ensure(oracle_kappa(j) == reference, || format!("oracle κ differs at j = {j}"));
            if let Some(k) = c.ok(comparison_scalar(j, -1 - j), "comparison") {
                c.ensure(k == reference, || format!("comparison_scalar({j}) = {k}"));
            }
        }
        for k in -6..=5 {
            let Some(x) = c.ok(xsymplectic(&e(j), &e(k)), "xsymplectic") else { continue };
            let want = k_scalar.scale(&tate_value(&t, j, k));
            c.ensure(x == want, || format!("({j},{k}): {x} vs κ·{{}} = {want}"));
        }
    }
}

pub fn heisenberg_virasoro(c: &mut Check) {
    let cap = HalfInt::int(6);
    let basis = basis_upto(cap);
    let modes: Vec<i32> = (-13..=13).filter(|d| d % 2 != 0).collect();
    for b in &basis {
        let v = FockVector::basis(b.clone());
        for &r in &modes {
            for &s in &modes {
                let (mr, ms) = (Mode::doubled(r).unwrap(), Mode::doubled(s).unwrap());
                let comm = alpha_apply(mr, &alpha_apply(ms, &v)).sub(&alpha_apply(ms, &alpha_apply(mr, &v)));
                let want = if r + s == 0 { v.scale(&Rat::new(r as i64, 2)) } else { FockVector::zero() };
                c.ensure(comm == want, || format!("[α_{r}/2, α_{s}/2] on {b:?}"));
            }
        }
    }

    let z = oracles::zero_point();
    c.ensure(z == fock::derived_zero_point(), || {
        format!("zero point {} vs oracle {z}", fock::derived_zero_point())
    });
    let space = FockSpace::new(cap);
    let to_oracle = |v: &FockVector| -> oracles::Vector {
        v.terms().map(|(m, q)| (oracles::state_of(m), q.clone())).collect()
    };
    // L_k agrees with the oracle operator on every basis vector it can reach
    for b in &basis {
        let v = FockVector::basis(b.clone());
        for k in -3..=3 {
            if let Ok(got) = space.virasoro_apply(k, &v) {
                let want = oracles::virasoro(k, &z, &to_oracle(&v));
                c.ensure(to_oracle(&got) == want, || format!("L_{k} on {b:?}"));
            }
        }
    }
    // central constant: one value across pairs and vectors
    let vac: oracles::Vector = [(oracles::State::new(), Rat::one())].into_iter().collect();
    let d = oracles::bracket_defect(2, -2, &z, &vac);
    let oracle_c = &d.get(&oracles::State::new()).cloned().unwrap_or_else(Rat::zero) * &Rat::new(12, 6);
    let mut seen = Vec::new();
    for m in 1..=3 {
        for b in &basis {
            let Ok(chk) = space.check_bracket(m, -m, b) else { continue };
            if m == 1 {
                c.ensure(chk.defect.is_zero(), || format!("[L_1, L_-1] defect on {b:?}"));
                continue;
            }
            match chk.central {
                Some(cc) => {
                    c.ensure(cc == oracle_c, || format!("c = {cc} at m = {m}, {b:?}; oracle {oracle_c}"));
                    seen.push(cc);
                }
                None => c.ensure(false, || format!("defect not central at m = {m}, {b:?}")),
            }
        }
    }
    c.ensure(seen.len() > 10, || "too few central-charge extractions".into());
    for m in -1..=3 {
        for n in -1..=3 {
            let central_free = m + n != 0 || m * m * m == m;
            if !central_free {
                continue;
            }
            for b in &basis {
                let v = FockVector::basis(b.clone());
                if let Ok(d) = space.bracket_defect(m, n, &v) {
                    c.ensure(d.is_zero(), || format!("defect ({m},{n}) on {b:?}"));
                    let od = oracles::bracket_defect(m, n, &z, &to_oracle(&v));
                    c.ensure(od.is_empty(), || format!("oracle defect ({m},{n}) on {b:?}"));
                }
            }
        }
    }
    c.ensure(space.closure_report(3).all_pass(), || "closure report fails".into());
}

pub fn kw_traces(c: &mut Check) {
    let lists = [
        vec![Rat::one()],
        vec![Rat::new(1, 2), Rat::int(3)],
        vec![Rat::int(2), Rat::new(5, 3), Rat::new(7, 4)],
    ];
    for k in 0..=5u32 {
        let df = oracles::double_factorial(2 * k as i64 - 1);
        let want_ratio = scalars::gamma_half(HalfInt::from_doubled(-1 - 2 * k as i32))
            .and_then(|g| g.inverse());
        let Some(want_ratio) = c.ok(want_ratio, "gamma_half") else { continue };
        c.ensure(want_ratio == oracles::recip_gamma(1 - 2 * k as i32), || format!("1/Γ(1/2-{k}) disagrees with oracle"));
        for l in &lists {
            let sum = l.iter().fold(Rat::zero(), |acc, x| {
                &acc + &oracles::power(&x.recip().unwrap(), 2 * k + 1)
            });
            let want = -&(&df * &sum);
            if let Some(got) = c.ok(fock::kw_trace(k, l), "kw_trace") {
                c.ensure(got == want, || format!("t_{k}({l:?}) = {got}, oracle {want}"));
            }
            if let Some(got) = c.ok(fock::kw_gamma_comparison(k, l), "kw_gamma_comparison") {
                c.ensure(got == want_ratio, || format!("ratio at k = {k}: {got} vs {want_ratio}"));
            }
        }
    }
}

fn eval_power_sums(v: &FockVector, x: &[Rat]) -> Rat {
    v.terms().fold(Rat::zero(), |acc, (m, q)| {
        let term = m.iter().fold(q.clone(), |t, &d| {
            let p = x.iter().fold(Rat::zero(), |s, xi| &s + &oracles::power(xi, d));
            &t * &p
        });
        &acc + &term
    })
}

pub fn schur_q(c: &mut Check) {
    let mut r = gen::rng(8);
    let parts: Vec<Vec<u32>> = (0..=6).flat_map(fock::strict_partitions).collect();
    for n in 1..=3 {
        for _ in 0..4 {
            let x = gen::distinct_rats(&mut r, n);
            let mut y = x.clone();
            y.reverse();
            if n > 2 {
                y.swap(0, 1);
            }
            for l in &parts {
                let want = oracles::schur_q_symmetrized(l, &x);
                let Some(got) = c.ok(fock::schur_q(l, &x), "schur_q") else { continue };
                c.ensure(got == want, || format!("Q_{l:?}({x:?}) = {got}, oracle {want}"));
                if let Some(g2) = c.ok(fock::schur_q(l, &y), "schur_q") {
                    c.ensure(g2 == got, || format!("Q_{l:?} not symmetric"));
                }
                if l.len() > n {
                    c.ensure(got.is_zero(), || format!("Q_{l:?} should vanish in {n} variables"));
                }
                if let Some(ps) = c.ok(fock::schur_q_in_power_sums(l), "power sums") {
                    let e = eval_power_sums(&ps, &x);
                    c.ensure(e == want, || format!("power-sum form of Q_{l:?} gives {e}"));
                }
            }
        }
    }
}

fn random_hodge(r: &mut impl rand::Rng) -> HodgeSpace {
    loop {
        let n = r.random_range(1..=4);
        let h: Vec<i32> = (0..n).map(|_| r.random_range(-2..=2)).collect();
        let e: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if h[i] - h[j] == 2 {
                            Rat::int(r.random_range(-3..=3))
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        if let Ok(s) = HodgeSpace::new(h, e) {
            return s;
        }
    }
}

pub fn givental(c: &mut Check) {
    let mut r = gen::rng(9);
    let spaces: Vec<HodgeSpace> = (0..20).map(|_| random_hodge(&mut r)).collect();
    c.ensure(spaces.iter().any(|s| s.e().iter().flatten().any(|v| !v.is_zero())), || {
        "no sample has E ≠ 0".into()
    });
    let parts = tate_core::par::map(&spaces, |s| {
        let mut c = Check::default();
        let n = s.dim();
        for i in 0..n {
            for j in -4..=3 {
                let b = VecSeries::basis(n, i, j, 3).unwrap();
                let twice = s.twisted_involution(&b).and_then(|u| s.twisted_involution(&u));
                if let Some(t) = c.ok(twice, "I_Giv") {
                    c.ensure(t == b, || format!("I_Giv² ≠ id on b_{i} e^{j}, h = {:?}", s.h()));
                }
            }
        }
        let plain = HodgeSpace::new(s.h().to_vec(), vec![vec![Rat::zero(); n]; n]).unwrap();
        for i in 0..n {
            for j in -4..=3 {
                let b = VecSeries::basis(n, i, j, 3).unwrap();
                c.ensure(plain.twisted_involution(&b).unwrap() == b.flip(), || "E = 0 is not the plain involution".into());
            }
        }
        let Some(rep) = c.ok(s.polarization_report(-4, 3), "report") else { return c };
        let m = rep.gram.len();
        let anti = (0..m).all(|a| (0..m).all(|b| rep.gram[a][b] == rep.gram[b][a].neg()));
        c.ensure(anti && rep.antisymmetric, || "twisted Gram not antisymmetric".into());
        // full rank at a sample point is enough for full rank over Q(t)
        let at = |t: &Rat| -> Vec<Vec<Rat>> {
            rep.gram.iter().map(|row| row.iter().map(|p| p.eval(t).unwrap()).collect()).collect()
        };
        let rk = oracles::rank(&at(&Rat::new(3, 7))).max(oracles::rank(&at(&Rat::int(5))));
        c.ensure(rk == m, || format!("twisted Gram rank {rk} of {m}"));
        c.ensure(rep.full_rank(), || "report rank is not full".into());
        c
    });
    merge(c, parts);

    // E = 0, H = 0 is the additive Tate Gram matrix in each component
    let t = TateModule::new(FormalGroupLaw::additive(12), 4).unwrap();
    let tate = tate_core::linalg::to_rational(&t.gram(Form::Symplectic, -4, 3).unwrap()).unwrap();
    let s = HodgeSpace::new(vec![0, 0], vec![vec![Rat::zero(); 2]; 2]).unwrap();
    let rep = s.polarization_report(-4, 3).unwrap();
    for (a, &(ia, ja)) in rep.labels.iter().enumerate() {
        for (b, &(ib, jb)) in rep.labels.iter().enumerate() {
            let want = if ia == ib {
                TPoly::constant(tate[(ja + 4) as usize][(jb + 4) as usize].clone())
            } else {
                TPoly::zero()
            };
            c.ensure(rep.gram[a][b] == want, || format!("H = E = 0 Gram differs at {a},{b}"));
        }
    }
    c.ensure(full_rank_over_qt(&rep.gram) == rep.gram.len(), || "H = E = 0 Gram not full rank".into());
}

pub fn infrastructure(c: &mut Check) {
    let mut r = gen::rng(10);
    let ring3 = Ring::nil(3).unwrap();
    for _ in 0..200 {
        let h = HalfInt::from_doubled(rand::Rng::random_range(&mut r, -400..=400));
        c.ensure(parse_half(&h.to_string()).ok() == Some(h), || format!("half {h}"));
        let s = gen::scalar(&mut r, 3, true, 0);
        c.ensure(parse_scalar(&s.to_string(), 3).ok() == Some(s.clone()), || format!("scalar {s}"));
        let f = gen::laurent(&mut r, 3, -4, 5, 7);
        c.ensure(parse_series(&f.to_string(), ring3).ok() == Some(f.clone()), || format!("series {f}"));
        let o = gen::odd_series(&mut r, 3, -7, 5, 9);
        c.ensure(parse_series(&o.to_string(), ring3).ok() == Some(o.clone()), || format!("series {o}"));
        let w = gen::window(&mut r);
        c.ensure(parse_window(&w.to_string()).ok() == Some(w), || format!("window {w}"));
        let g = gen::grid(&mut r, 3);
        c.ensure(parse_grid(&g.to_string(), 3).ok() == Some(g.clone()), || format!("grid {g}"));
        let p = gen::partition(&mut r);
        c.ensure(parse_partition(&format_partition(&p)).ok() == Some(p.clone()), || format!("partition {p:?}"));
    }

    // Window soundness: a pipeline on truncated inputs is refined by the same
    // pipeline on longer inputs.
    type Pipeline = fn(&Series, &Series) -> tate_core::Result<Series>;
    let pipelines: [(&str, Pipeline); 5] = [
        ("compose·reversion", |f, g| f.compose(g)?.mul(&g.reversion()?)),
        ("mul_inverse", |f, g| f.mul(&g.mul_inverse()?)),
        ("derivative∘compose", |f, g| Ok(f.compose(g)?.derivative().add(&f.mul(g)?)?)),
        ("sqrt_odd·act", |f, g| {
            let h = g.sqrt_odd()?;
            h.mul(&f.compose(g)?)
        }),
        ("project∘compose", |f, g| f.compose(&g.reversion()?)?.project_geq(HalfInt::int(-1))),
    ];
    for i in 0..50 {
        let (name, p) = pipelines[i % pipelines.len()];
        let f = gen::laurent(&mut r, 3, -2, 12, 12);
        let mut g = gen::nil_element(&mut r, 3, 0, 12, 0.5);
        if name.starts_with("sqrt") {
            let terms: Vec<_> = g
                .terms()
                .map(|(e, s)| if e == HalfInt::ONE { (e, Scalar::int(4, 3)) } else { (e, s.clone()) })
                .collect();
            g = Series::new(ring3, g.window(), terms).unwrap();
        }
        let cut = rand::Rng::random_range(&mut r, 5..=10);
        let shorten = |s: &Series| s.restrict(Window::new(s.window().lo, HalfInt::int(cut)).unwrap()).unwrap();
        let big = c.ok(p(&f, &g), name);
        let small = c.ok(p(&shorten(&f), &shorten(&g)), name);
        if let (Some(big), Some(small)) = (big, small) {
            c.ensure(small.refined_by(&big), || format!("{name}: {small} not refined by {big}"));
        }
    }
}
