use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rppk::edgelist::{parse_edgelist, write_edgelist};
use rppk::pipeline::{kernelize_prepared, prepare, solve, Method};
use rppk::solution::{parse_solution, write_extension, write_walk};
use rppk::synth::random_small;
use rppk::trace::{parse_trace, write_trace};
use rppk_core::kernel::{GammaBound, KernelOptions};
use rppk_core::ratio::Rational;
use rppk_core::solver::{approx_32, KernelSolution};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn edgelist_round_trip(seed in any::<u64>()) {
        let inst = random_small(&mut ChaCha8Rng::seed_from_u64(seed), 8, 8, 30);
        let text = write_edgelist(&inst);
        let back = parse_edgelist(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(write_edgelist(&back), text);
    }

    #[test]
    fn trace_and_solution_round_trip(seed in any::<u64>(), eps_num in 1u128..20, reduce in any::<bool>()) {
        let inst = random_small(&mut ChaCha8Rng::seed_from_u64(seed), 8, 8, 30);
        let Some(prep) = prepare(&inst).unwrap() else { return Ok(()) };
        let options = KernelOptions { weight_reduction: reduce, gamma_bound: GammaBound::Required };
        let k = kernelize_prepared(&prep, Rational::new(eps_num, 10), options).unwrap().kernel;
        let back = parse_trace(&write_trace(&k.trace)).unwrap();
        prop_assert_eq!(&back, &k.trace);

        let s = approx_32(&k.instance).unwrap();
        match parse_solution(&write_extension(&s)).unwrap() {
            KernelSolution::Extension(t) => prop_assert_eq!(t, s),
            other => prop_assert!(false, "{:?}", other),
        }
        let walk = solve(&prep, Method::Approx32).unwrap();
        match parse_solution(&write_walk(&walk)).unwrap() {
            KernelSolution::Tour(t) => prop_assert_eq!(t, walk),
            other => prop_assert!(false, "{:?}", other),
        }
    }
}
