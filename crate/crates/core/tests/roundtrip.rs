use abel_core::construct::from_three_solutions;
use abel_core::generate::{three_degree_spec, two_solution_instance};
use abel_core::ndcheck::FieldMode;
use abel_core::solver::{solve_with, SolveOptions};
use abel_core::structure::{count_bound, three_solution_degrees};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn two_solution_instances_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let opts = SolveOptions {
        oracle: true,
        ..SolveOptions::default()
    };
    let mut stats = [0usize; 4];
    for _ in 0..200 {
        let (eq, spec) = two_solution_instance(&mut rng);
        let set = solve_with(&eq, &opts);
        assert!(
            set.contains(&spec.p1) && set.contains(&spec.p2),
            "{} | {} | {eq:?}",
            spec.p1.display_with("t"),
            spec.p2.display_with("t")
        );
        if let Some(o) = &set.oracle {
            if o.applicable {
                assert_eq!(o.agree, Some(true), "{eq:?}");
            }
        }
        stats[set.completeness as usize] += 1;
        for mode in [FieldMode::Real, FieldMode::Complex] {
            let b = count_bound(&eq, &set, mode);
            if b.applies {
                assert!(b.realized <= b.bound, "{b:?} {eq:?}");
            }
        }
    }
    eprintln!("completeness histogram {stats:?}");
}

#[test]
fn three_degree_instances_follow_degree_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let spec = three_degree_spec(&mut rng);
        let eq = from_three_solutions(&spec).unwrap();
        let d = spec.p.each_ref().map(|p| p.deg().unwrap());
        assert_eq!(
            three_solution_degrees(d, spec.exponents),
            Ok((eq.a(1), eq.a(2), eq.a(3)))
        );
        let set = solve_with(&eq, &SolveOptions::default());
        assert!(spec.p.iter().all(|p| set.contains(p)));
        assert!(set.gamma_sol.len() <= 3);
    }
}
