//! Property tests for the structural invariants: coordinate round-trips,
//! scaling homogeneity, perfect-square reduction, spectral-gap affineness,
//! and the complex angular-momentum eigenfunction combination.

use proptest::prelude::*;

use nubound::angular::{nu_problem, AngularWavefunction};
use nubound::model::{
    barred_params, eval_cartesian, eval_polar, separation_data, BarredParams, NoncentralParams,
    PhysConst, PotentialSpec,
};
use nubound::nu::{
    self, k_candidates, lambda_n, pi_branches, AdmissibilityPolicy, EndpointRule, SpectralScan,
};
use nubound::oracle::quad;

fn nc_strategy() -> impl Strategy<Value = NoncentralParams> {
    (
        0.0..2.0f64,
        0.0..2.0f64,
        0.0..2.0f64,
        0.0..2.0f64,
        0.0..2.0f64,
    )
        .prop_map(|(b, c, d, f, g)| NoncentralParams::new(b, c, d, f, g).unwrap())
}

fn coord_strategy() -> impl Strategy<Value = f64> {
    // [-5, 5] with the axes excluded, as the noncentral terms are singular
    // there by construction.
    (1e-3..5.0f64, prop::bool::ANY).prop_map(|(m, neg)| if neg { -m } else { m })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn polar_cartesian_round_trip(
        x in coord_strategy(),
        y in coord_strategy(),
        nc in nc_strategy(),
        hrs in prop::bool::ANY,
    ) {
        let spec = if hrs {
            PotentialSpec::new_hrs(4.0, 1.0, nc, PhysConst::default()).unwrap()
        } else {
            PotentialSpec::new_rso(4.0, 1.0, nc, PhysConst::default()).unwrap()
        };
        let r = x.hypot(y);
        prop_assume!(x.abs().min(y.abs()) >= 1e-3 * r);
        let vc = eval_cartesian(&spec, x, y).unwrap();
        let vp = eval_polar(&spec, r, y.atan2(x)).unwrap();
        prop_assert!((vc - vp).abs() <= 1e-12 * (1.0 + vc.abs()), "{vc} vs {vp}");
    }

    #[test]
    fn central_reduction_depends_on_radius_only(
        r in 0.1..8.0f64,
        phi1 in 1e-3..1.57f64,
        phi2 in 1e-3..1.57f64,
    ) {
        let spec = PotentialSpec::new_hrs(3.0, 1.2, NoncentralParams::zero(), PhysConst::default())
            .unwrap();
        let v1 = eval_polar(&spec, r, phi1).unwrap();
        let v2 = eval_polar(&spec, r, phi2).unwrap();
        prop_assert!((v1 - v2).abs() <= 1e-13 * (1.0 + v1.abs()));
    }

    #[test]
    fn barred_and_separation_scale_linearly(
        nc in nc_strategy(),
        mass in 0.2..4.0f64,
        factor in 1.2..5.0f64,
    ) {
        let pc1 = PhysConst::new(mass, 1.0).unwrap();
        let pc2 = PhysConst::new(mass * factor, 1.0).unwrap();
        let b1 = barred_params(&nc, &pc1);
        let b2 = barred_params(&nc, &pc2);
        for (u, v) in [
            (b1.bbar, b2.bbar),
            (b1.cbar, b2.cbar),
            (b1.dbar, b2.dbar),
            (b1.fbar, b2.fbar),
            (b1.gbar, b2.gbar),
        ] {
            prop_assert!((u * factor - v).abs() <= 1e-12 * (1.0 + v.abs()));
        }

        let msq = 0.25; // cancels the centrifugal shift, isolating the scaling part
        let s1 = PotentialSpec::new_hrs(2.0, 0.7, nc, pc1).unwrap();
        let s2 = PotentialSpec::new_hrs(2.0, 0.7, nc, pc2).unwrap();
        let d1 = separation_data(&s1, msq);
        let d2 = separation_data(&s2, msq);
        prop_assert!((d1.lambda0 * factor - d2.lambda0).abs() <= 1e-12 * (1.0 + d2.lambda0.abs()));
        prop_assert!((d1.lambda * factor - d2.lambda).abs() <= 1e-12 * (1.0 + d2.lambda.abs()));

        let o1 = PotentialSpec::new_rso(2.0, 0.7, nc, pc1).unwrap();
        let o2 = PotentialSpec::new_rso(2.0, 0.7, nc, pc2).unwrap();
        let g1 = separation_data(&o1, msq);
        let g2 = separation_data(&o2, msq);
        prop_assert!((g1.atilde * factor - g2.atilde).abs() <= 1e-12 * (1.0 + g2.atilde.abs()));
        prop_assert!((g1.gamma * factor - g2.gamma).abs() <= 1e-12 * (1.0 + g2.gamma.abs()));
    }

    #[test]
    fn square_completion_is_exact(
        bbar in 0.0..3.0f64,
        cbar in 0.0..3.0f64,
        dbar in 0.0..3.0f64,
        fbar in 0.0..3.0f64,
        gbar in 0.0..3.0f64,
        msq in 0.0..50.0f64,
    ) {
        let bp = BarredParams::new(bbar, cbar, dbar, fbar, gbar).unwrap();
        let p = nu_problem(&bp, msq).unwrap();
        for k in k_candidates(&p).unwrap() {
            let q = p.q_at(k);
            let scale = q.scale().max(1.0);
            for b in pi_branches(&p, k) {
                // pi - half_gap is +/- sqrt(Q); square it back.
                let half_gap_c0 = 0.5;
                let half_gap_c1 = -1.0;
                let root_c0 = b.pi.c0 - half_gap_c0;
                let root_c1 = b.pi.c1 - half_gap_c1;
                for i in 0..=40 {
                    let t = f64::from(i) / 40.0;
                    let root = root_c0 + root_c1 * t;
                    prop_assert!(
                        (q.eval(t) - root * root).abs() <= 1e-10 * scale,
                        "k={k} t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn spectral_gap_is_affine_in_msq(
        dbar in 0.0..3.0f64,
        gbar in 0.0..3.0f64,
        n in 0u32..3,
    ) {
        let bp = BarredParams::new(0.0, 0.0, dbar, 0.0, gbar).unwrap();
        let policy = AdmissibilityPolicy::dirichlet();
        let gap = |s: f64| -> Option<f64> {
            let p = nu_problem(&bp, s).ok()?;
            let ks = k_candidates(&p).ok()?;
            for k in ks {
                for b in pi_branches(&p, k) {
                    if nu::admissible(&b, &policy) {
                        return Some(b.lambda - lambda_n(&p, &b, n));
                    }
                }
            }
            None
        };
        let (s0, s1, s2) = (1.0, 21.0, 41.0);
        let (g0, g1, g2) = (gap(s0), gap(s1), gap(s2));
        prop_assert!(g0.is_some() && g1.is_some() && g2.is_some());
        let (g0, g1, g2) = (g0.unwrap(), g1.unwrap(), g2.unwrap());
        // three-point collinearity
        let lerp = g0 + (g2 - g0) * (s1 - s0) / (s2 - s0);
        prop_assert!((g1 - lerp).abs() <= 1e-10 * (1.0 + g1.abs()), "{g1} vs {lerp}");
    }
}

/// The two M^2 = 4 partners of the zero-barrier problem combine into the
/// complex exponential: with Phi_s ~ sin(2 phi) (Dirichlet, n0 = 0) and
/// Phi_c ~ cos(2 phi) (nonnegative policy, n0 = 1), the combination
/// Phi_c + i Phi_s satisfies -i d/dphi Phi = 2 Phi pointwise, so the full
/// 2D product state is an exact angular-momentum eigenfunction.
#[test]
fn complex_partner_combination_is_momentum_eigenfunction() {
    let bp = BarredParams::zero();

    let sin_sol = nubound::angular::m_squared_nu(&bp, 0).unwrap()[0];
    let sin_wf = nubound::angular::angular_wavefunction(&sin_sol).unwrap();

    // The cosine family needs relaxed endpoint rules; build its wavefunction
    // from the engine branch directly.
    let policy = AdmissibilityPolicy {
        left: EndpointRule::NonNegative,
        right: EndpointRule::NonNegative,
    };
    let scan = SpectralScan {
        s_min: 0.0,
        s_max: 50.0,
        panels: 64,
    };
    let eigens = nu::solve_spectral(|s| nu_problem(&bp, s), 1, &policy, &scan).unwrap();
    let cos_eig = eigens
        .iter()
        .find(|e| (e.spectral_value - 4.0).abs() < 1e-6)
        .expect("cos(2 phi) partner at M^2 = 4");
    let (e0, e1) = cos_eig.branch.phi_exponents();
    let nu::PolyFamily::Jacobi { a, b } = cos_eig.family else {
        panic!("unexpected family {:?}", cos_eig.family)
    };
    let mut cos_wf = AngularWavefunction {
        n0: 1,
        msq: cos_eig.spectral_value,
        e0,
        e1,
        jacobi_a: a,
        jacobi_b: b,
        norm: 1.0,
    };
    let raw = quad(
        |p| cos_wf.value(p).powi(2),
        0.0,
        std::f64::consts::FRAC_PI_2,
    )
    .unwrap();
    cos_wf.norm = raw.sqrt().recip();

    // Align signs so the pair is (cos, sin) rather than (-cos, sin).
    if cos_wf.value(0.0) < 0.0 {
        cos_wf.norm = -cos_wf.norm;
    }

    let m = 2.0;
    for i in 1..200 {
        let phi = std::f64::consts::FRAC_PI_2 * f64::from(i) / 200.0;
        let (vs, ds, _) = sin_wf.with_derivs(phi);
        let (vc, dc, _) = cos_wf.with_derivs(phi);
        // real and imaginary parts of (-i d/dphi - m)(vc + i vs)
        let re = ds - m * vc;
        let im = -(dc + m * vs);
        assert!(re.abs() <= 1e-8, "phi={phi}: re {re}");
        assert!(im.abs() <= 1e-8, "phi={phi}: im {im}");
    }
}

/// Dense deterministic sweep of the coordinate round-trip, 1e4 points.
#[test]
fn polar_cartesian_round_trip_dense() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
    let nc = NoncentralParams::new(0.4, 0.9, 1.3, 0.2, 0.6).unwrap();
    let specs = [
        PotentialSpec::new_hrs(4.0, 1.0, nc, PhysConst::default()).unwrap(),
        PotentialSpec::new_rso(4.0, 1.0, nc, PhysConst::default()).unwrap(),
    ];
    let mut tested = 0;
    while tested < 10_000 {
        let spec = &specs[tested % 2];
        let draw = |rng: &mut rand_chacha::ChaCha8Rng| {
            let m: f64 = rng.random_range(0.0..5.0f64);
            if rng.random() {
                m
            } else {
                -m
            }
        };
        let (x, y) = (draw(&mut rng), draw(&mut rng));
        // The angle of a polar pair stores axis distance only to absolute
        // f64 precision, so points within ~1e-3 of an axis (relative to r)
        // cannot round-trip below 1e-12 through any (r, phi) route.
        let r = x.hypot(y);
        if r == 0.0 || x.abs().min(y.abs()) < 1e-3 * r {
            continue;
        }
        tested += 1;
        let vc = eval_cartesian(spec, x, y).unwrap();
        let vp = eval_polar(spec, r, y.atan2(x)).unwrap();
        assert!(
            (vc - vp).abs() <= 1e-12 * (1.0 + vc.abs()),
            "({x}, {y}): {vc} vs {vp}"
        );
    }
}

/// The number of oracle box states below the dissociation threshold covers
/// the derived ladder, and the two ladders agree level by level.
#[test]
fn oracle_bound_state_count_matches_derived() {
    let spec =
        PotentialSpec::new_hrs(4.0, 1.0, NoncentralParams::zero(), PhysConst::default()).unwrap();
    let msq = nubound::angular::m_squared_nu(&spec.barred(), 0).unwrap()[0].msq;
    let sd = separation_data(&spec, msq);
    let pc = PhysConst::default();
    let r_box = nubound::radial::hrs_r_max(&sd, 3, &pc).unwrap();
    let below = nubound::oracle::radial_count_below(
        nubound::model::RadialSystem::Hrs,
        &sd,
        6000,
        r_box,
        0.0,
    )
    .unwrap();
    assert!(
        below >= 4,
        "box admits at least the compared ladder, got {below}"
    );
    let oracle =
        nubound::oracle::radial_oracle(nubound::model::RadialSystem::Hrs, &sd, 4, 6000, r_box)
            .unwrap();
    for n1 in 0..4u32 {
        let sol = nubound::radial::hrs_energy_derived(&sd, n1, &pc).unwrap();
        let gap = (sol.etilde - oracle[n1 as usize]).abs();
        assert!(gap <= 1e-4 * (1.0 + sol.etilde.abs()), "n1={n1}: gap {gap}");
        assert!(
            sol.etilde < 0.0,
            "bound states sit below the dissociation threshold"
        );
    }
}

/// Oracle wavefunctions for distinct n0 on the same branch family stay
/// orthogonal under plain quadrature.
#[test]
fn engine_modes_orthogonal_across_n0() {
    let bp = BarredParams::new(0.6, 0.2, 1.1, 0.4, 0.3).unwrap();
    let wfs: Vec<_> = (0..3u32)
        .map(|n0| {
            let sol = nubound::angular::m_squared_nu(&bp, n0).unwrap()[0];
            nubound::angular::angular_wavefunction(&sol).unwrap()
        })
        .collect();
    for i in 0..wfs.len() {
        for j in (i + 1)..wfs.len() {
            let ip = quad(
                |p| wfs[i].value(p) * wfs[j].value(p),
                0.0,
                std::f64::consts::FRAC_PI_2,
            )
            .unwrap();
            assert!(ip.abs() <= 1e-8, "<{i},{j}> = {ip}");
        }
    }
}
