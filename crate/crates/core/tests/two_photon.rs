use lightcone_core::two_photon::{
    concurrence_two_photon, concurrence_two_photon_modes, f_bilinears, g_bilinears,
    per_mode_amplitudes, two_photon_bilinears, two_photon_bilinears_ordered, AtomOrder, PhotonMode,
};
use lightcone_core::{Kinematics, ModelParams};

fn kin(x: f64, z: f64) -> Kinematics {
    Kinematics::new(x, z).unwrap()
}

#[test]
fn cauchy_schwarz_on_a_coarse_figure_grid() {
    let p = ModelParams::default();
    for z in [5.0, 10.0, 15.0] {
        for x in [0.2, 0.6, 0.95, 1.05, 1.5, 2.0] {
            let b = two_photon_bilinears(&p, &kin(x, z)).unwrap();
            assert!(b.satisfies_cauchy_schwarz(1e-9), "({x}, {z})");
            let c = b.concurrence().unwrap();
            assert!((0.0..=1.0).contains(&c));
        }
    }
}

#[test]
fn relabelling_the_atoms_changes_nothing() {
    let p = ModelParams::default();
    for (x, z) in [(0.7, 5.0), (1.3, 10.0)] {
        let ab = two_photon_bilinears_ordered(&p, &kin(x, z), AtomOrder::AB).unwrap();
        let ba = two_photon_bilinears_ordered(&p, &kin(x, z), AtomOrder::BA).unwrap();
        assert!((ab.concurrence().unwrap() - ba.concurrence().unwrap()).abs() < 1e-14);
        assert!((ab.fg - ba.fg).norm() <= 1e-14 * ab.fg.norm());
    }
}

#[test]
fn kink_at_the_light_cone() {
    let p = ModelParams::default();
    for z in [5.0, 10.0, 15.0] {
        let c = |x: f64| concurrence_two_photon(&p, &kin(x, z)).unwrap();
        let across = (c(1.001) - c(0.999)).abs();
        let away = (c(1.101) - c(1.099)).abs();
        assert!(across > 10.0 * away, "z = {z}: {across:e} vs {away:e}");
    }
}

#[test]
fn zero_time_limits() {
    let p = ModelParams { nu_max: 10.0, ..ModelParams::default() };
    let (g_late, _) = g_bilinears(&p, &kin(0.8, 4.0)).unwrap();
    let (g_early, _) = g_bilinears(&p, &kin(4e4, 4.0)).unwrap();
    assert!(g_early < 1e-8 * g_late);
    let (_, fg_late) = f_bilinears(&p, &kin(0.8, 4.0)).unwrap();
    let (_, fg_early) = f_bilinears(&p, &kin(4e4, 4.0)).unwrap();
    assert!(fg_early.norm() < 1e-6 * fg_late.norm());
}

#[test]
fn per_mode_concurrence_is_a_valid_ratio() {
    let k = kin(1.2, 6.0);
    let pol = [0.0, 0.0, 1.0];
    for (n1, n2) in [(0.5, 1.5), (1.0, 1.0), (3.0, 0.2)] {
        let m1 = PhotonMode::new(n1, [1.0, 0.0, 0.0], pol).unwrap();
        let m2 = PhotonMode::new(n2, [0.0, 1.0, 0.0], pol).unwrap();
        let c = concurrence_two_photon_modes(&k, &m1, &m2).unwrap();
        assert!((0.0..=1.0).contains(&c));
        // the photon labels are interchangeable
        let (f, g) = per_mode_amplitudes(&k, &m1, &m2, AtomOrder::AB);
        let (fs, gs) = per_mode_amplitudes(&k, &m2, &m1, AtomOrder::AB);
        assert!((f - fs).norm() <= 1e-14 * f.norm());
        assert!((g - gs).norm() <= 1e-14 * g.norm());
    }
    // a photon polarized orthogonally to the dipoles decouples
    let dark = PhotonMode::new(1.0, [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]).unwrap();
    let bright = PhotonMode::new(1.0, [1.0, 0.0, 0.0], pol).unwrap();
    assert!(concurrence_two_photon_modes(&k, &dark, &bright).is_err());
}
