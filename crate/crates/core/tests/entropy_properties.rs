use gent_core::corner::{entropy_am, entropy_fw};
use gent_core::graph::{complement, or_product, substitute, union_graphs};
use gent_core::prob::entropy;
use gent_core::verify::{random_distribution, random_graph};
use gent_core::{Distribution, Graph, SolverConfig};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SLACK: f64 = 1e-5;

fn h(g: &Graph, p: &Distribution) -> f64 {
    entropy_fw(g, p, &SolverConfig::default()).unwrap().result.value
}

fn instance(seed: u64, n: usize, q: f64) -> (Graph, Distribution, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_graph(&mut rng, n, q);
    let p = random_distribution(&mut rng, n);
    (g, p, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn bounded_by_source_entropy(seed in any::<u64>(), n in 1usize..9, q in 0.0f64..1.0) {
        let (g, p, _) = instance(seed, n, q);
        let x = h(&g, &p);
        prop_assert!(x >= -SLACK && x <= entropy(&p) + SLACK);
    }

    #[test]
    fn solvers_agree(seed in any::<u64>(), n in 1usize..8, q in 0.0f64..1.0) {
        let (g, p, _) = instance(seed, n, q);
        let cfg = SolverConfig::default();
        let a = entropy_fw(&g, &p, &cfg).unwrap().result.value;
        let b = entropy_am(&g, &p, &cfg).unwrap().value;
        prop_assert!((a - b).abs() <= 2.0 * cfg.tol + 1e-9, "fw {a} am {b}");
    }

    #[test]
    fn monotone_and_subadditive(seed in any::<u64>(), n in 2usize..9) {
        let (f, p, mut rng) = instance(seed, n, 0.3);
        let g = random_graph(&mut rng, n, 0.3);
        let u = union_graphs(&f, &g).unwrap();
        let (hf, hg, hu) = (h(&f, &p), h(&g, &p), h(&u, &p));
        prop_assert!(hu >= hf.max(hg) - SLACK);
        prop_assert!(hu <= hf + hg + SLACK);
    }

    #[test]
    fn splitting_lower_bound(seed in any::<u64>(), n in 1usize..9, q in 0.0f64..1.0) {
        let (g, p, _) = instance(seed, n, q);
        prop_assert!(h(&g, &p) + h(&complement(&g), &p) >= entropy(&p) - SLACK);
    }

    #[test]
    fn or_product_is_additive(seed in any::<u64>(), n1 in 1usize..4, n2 in 1usize..4) {
        let (g1, p1, mut rng) = instance(seed, n1, 0.5);
        let g2 = random_graph(&mut rng, n2, 0.5);
        let p2 = random_distribution(&mut rng, n2);
        let prod = or_product(&g1, &g2, 64).unwrap();
        let lhs = h(&prod, &p1.product(&p2));
        prop_assert!((lhs - h(&g1, &p1) - h(&g2, &p2)).abs() <= 1e-4);
    }

    #[test]
    fn substitution(seed in any::<u64>(), n in 2usize..6, m in 1usize..4, v in 0usize..6) {
        let (g, p, mut rng) = instance(seed, n, 0.5);
        let v = v % n;
        let f = random_graph(&mut rng, m, 0.5);
        let q = random_distribution(&mut rng, m);
        let mut joined: Vec<f64> = (0..n).filter(|&u| u != v).map(|u| p.probs()[u]).collect();
        joined.extend(q.probs().iter().map(|x| x * p.probs()[v]));
        let s = substitute(&g, v, &f).unwrap();
        let lhs = h(&s, &Distribution::normalized(joined).unwrap());
        let rhs = h(&g, &p) + p.probs()[v] * h(&f, &q);
        prop_assert!((lhs - rhs).abs() <= 1e-4, "{lhs} vs {rhs}");
    }

    #[test]
    fn concave_in_distribution(seed in any::<u64>(), n in 1usize..8, t in 0.0f64..1.0) {
        let (g, p, mut rng) = instance(seed, n, 0.5);
        let q = random_distribution(&mut rng, n);
        let mix: Vec<f64> = p.probs().iter().zip(q.probs()).map(|(a, b)| t * a + (1.0 - t) * b).collect();
        let lhs = h(&g, &Distribution::normalized(mix).unwrap());
        prop_assert!(lhs >= t * h(&g, &p) + (1.0 - t) * h(&g, &q) - SLACK);
    }
}

#[test]
fn complete_and_empty_graphs() {
    let p = Distribution::new(vec![0.5, 0.25, 0.125, 0.125]).unwrap();
    let k4 = complement(&Graph::empty(4).unwrap());
    assert!((h(&k4, &p) - 1.75).abs() < 1e-6);
    assert!(h(&Graph::empty(4).unwrap(), &p).abs() < 1e-9);
}
