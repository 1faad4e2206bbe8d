use charp_core::azcorr::{cartier_direct, cartier_inverse, module_isomorphic, IsoVerdict};
use charp_core::frobenius::frobenius_pullback_matrix;
use charp_core::connection::p_curvature;
use charp_core::gen;
use charp_core::{Field, PolyRing, Twist};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn correspondence_roundtrip_sample() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, d, r) in [(2, 1, 1), (2, 1, 2), (3, 1, 2), (2, 2, 2), (3, 2, 2)] {
        let rp = PolyRing::new(&Field::prime(p).unwrap(), d, Twist::Rprime);
        for _ in 0..5 {
            let theta = gen::multiplicity_free_higgs(&rp, r, &mut rng).unwrap();
            let conn = cartier_inverse(&theta).unwrap();
            assert!(conn.is_flat());
            let psi = p_curvature(&conn).unwrap();
            for (i, m) in theta.matrices().iter().enumerate() {
                assert_eq!(psi.matrix(i), &frobenius_pullback_matrix(m).unwrap());
            }
            let g = gen::unimodular(conn.ring(), r, 2, 1, &mut rng);
            let moved = conn.gauge(&g, &g.unimodular_inverse().unwrap());
            let back = cartier_direct(&moved, 4).unwrap();
            let verdict = module_isomorphic(theta.matrices(), back.theta.matrices(), 4).unwrap();
            assert!(matches!(verdict, IsoVerdict::Found(_)), "no intertwiner for {theta:?} vs {:?}", back.theta);
        }
    }
}
