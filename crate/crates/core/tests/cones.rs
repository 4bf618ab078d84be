use jordan_geo::asymptotics::{cone_membership, shared_tail, ConeNeighborhood};
use jordan_geo::sampling::UniformSampler;
use jordan_geo::{Domain, PolygonKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn nested_epsilon_membership_is_monotone() {
    let d = Domain::generated(&PolygonKind::Comb { teeth: 3 }).unwrap();
    let sampler = UniformSampler::new(&d);
    let mut rng = ChaCha8Rng::seed_from_u64(81);
    for _ in 0..10 {
        let p = sampler.interior_point(&d, &mut rng);
        let q = sampler.boundary_point(&d, &mut rng);
        let ray = d.geodesic(p, q).unwrap();
        if ray.total_length() < 1e-6 {
            continue;
        }
        let c = 0.5 * ray.total_length();
        let small = ConeNeighborhood::new(ray.clone(), c, 0.05).unwrap();
        let big = ConeNeighborhood::new(ray.clone(), c, 0.2).unwrap();
        for _ in 0..40 {
            let x = sampler.mixed_point(&d, &mut rng);
            if cone_membership(&d, &small, x).unwrap() {
                assert!(cone_membership(&d, &big, x).unwrap());
            }
        }
        for k in 1..10 {
            let x = ray.at(c + (ray.total_length() - c) * k as f64 / 10.0);
            assert!(cone_membership(&d, &small, x).unwrap());
        }
    }
}

#[test]
fn shared_tail_shrinks_as_q_moves_away() {
    for kind in [PolygonKind::Spiral { turns: 2 }, PolygonKind::Comb { teeth: 4 }, PolygonKind::LShape] {
        let d = Domain::generated(&kind).unwrap();
        let sampler = UniformSampler::new(&d);
        let mut rng = ChaCha8Rng::seed_from_u64(82);
        for _ in 0..10 {
            let p = sampler.interior_point(&d, &mut rng);
            let far = sampler.interior_point(&d, &mut rng);
            let r = sampler.interior_point(&d, &mut rng);
            let g = d.geodesic(p, far).unwrap();
            let mut prev = f64::INFINITY;
            for k in 0..=20 {
                let q = g.at(g.total_length() * k as f64 / 20.0);
                let t = shared_tail(&d, p, q, r).unwrap().tail_length;
                assert!(t <= prev + 1e-9 * d.diameter(), "{kind}: tail grew from {prev} to {t}");
                prev = t;
            }
        }
    }
}
