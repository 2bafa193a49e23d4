use hyperchaos_core::certify::{Certificate, Certifier, Evidence};
use hyperchaos_core::metric::MetricParams;
use hyperchaos_core::sample::{random_target, random_unstable_set};
use hyperchaos_core::Alphabet;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn round_trip(cert: &Certificate) {
    let back: Certificate = serde_json::from_str(&serde_json::to_string(cert).unwrap()).unwrap();
    back.verify().unwrap();
}

#[test]
fn triple_holds_on_random_unstable_sets() {
    for m in [2usize, 3] {
        let alphabet = Alphabet::new(m).unwrap();
        let ctx = Certifier::new(alphabet, MetricParams::default(), 1e-12).unwrap();
        let epsilon0 = ctx.metric.check_separation(alphabet, 1).unwrap().epsilon0;
        let mut rng = ChaCha8Rng::seed_from_u64(2024 + m as u64);
        for _ in 0..20 {
            let u = random_unstable_set(&mut rng, alphabet);
            let point = u.universal_member(alphabet);
            for _ in 0..10 {
                let target = random_target(&mut rng, alphabet, 2, 3);
                let cert = ctx.transitivity_witness(&u, &target).unwrap();
                let Evidence::Transitivity(e) = &cert.evidence else { panic!() };
                assert!(target.contains(&point.shift(e.steps)));
                round_trip(&cert);
            }
            for delta in [0.1, 1e-2, 1e-3] {
                let cert = ctx.periodic_density_witness(&point, delta).unwrap();
                let Evidence::PeriodicDensity(e) = &cert.evidence else { panic!() };
                assert!(e.distance.upper() < delta);
                round_trip(&cert);
            }
            for eps in [0.25, 1e-2] {
                let cert = ctx.sensitivity_witness(&point, eps).unwrap();
                let Evidence::Sensitivity(e) = &cert.evidence else { panic!() };
                assert!(e.initial.upper() < eps);
                assert!(e.divergence.lower() >= epsilon0);
                assert!(u.contains(&e.partner));
                round_trip(&cert);
            }
        }
    }
}
