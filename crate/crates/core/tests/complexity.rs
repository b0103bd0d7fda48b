use markov_complexity::bases::universal_markov_basis;
use markov_complexity::complexity::*;
use markov_complexity::lattice::{has_conformal_decomposition, type_of};
use markov_complexity::*;

fn matrices(model: &str, dims: &str) -> (IntMatrix, IntMatrix) {
    model_matrices(&parse_complex(model).unwrap(), &TableDims::parse(dims).unwrap()).unwrap()
}

fn report(model: &str, dims: &str, mode: ProfileMode) -> ComplexityReport {
    let opts = PipelineOptions { mode, ..PipelineOptions::default() };
    model_complexities(&parse_complex(model).unwrap(), &TableDims::parse(dims).unwrap(), &opts).unwrap()
}

fn assert_profile_shape(p: &MarkovProfile) {
    let types: Vec<usize> = p.profile.iter().map(|e| e.max_type).collect();
    assert!(types.windows(2).all(|w| w[0] <= w[1]), "profile {types:?} decreases");
    for e in &p.profile {
        assert!(e.max_type <= e.r);
        if e.r >= p.value {
            assert_eq!(e.max_type, p.value, "profile {types:?} moves past {}", p.value);
        }
    }
}

#[test]
fn worked_example_graver_and_lower_bound() {
    let (a, b) = matrices("[12][13][23]", "3,3");
    let g = graver_complexity(&a, &b, &Caps::default()).unwrap();
    assert_eq!(g.value, 9);
    let w = g.witness.as_ref().unwrap();
    assert_eq!(w.norm1(), 9);
    assert!(w.validate(&a, &b, &g.generators).unwrap());
    let lb = markov_lower_bound(&a, &b, &Caps::default()).unwrap();
    assert_eq!(lb.value, 5);
}

#[test]
fn lower_bound_three_by_four() {
    let (a, b) = matrices("[12][13][23]", "3,4");
    assert_eq!(markov_lower_bound(&a, &b, &Caps::default()).unwrap().value, 8);
}

#[test]
fn worked_example_markov_profile() {
    let (a, b) = matrices("[12][13][23]", "3,3");
    let g = graver_complexity(&a, &b, &Caps::default()).unwrap();
    let p = markov_profile(&a, &b, &g, ProfileMode::Heuristic, &Caps::default()).unwrap();
    assert_eq!(p.value, 5);
    assert!(!p.certified);
    let types: Vec<usize> = p.profile.iter().map(|e| e.max_type).collect();
    assert_eq!(types, vec![0, 2, 3, 4, 5, 5, 5]);
    assert_profile_shape(&p);
    let w = p.witness.unwrap();
    assert_eq!(w.slice_count(), 5);
    assert!(w.slices().iter().all(|s| a.in_kernel(s)));
    assert!(b.in_kernel(&w.slice_sum()));
    assert_eq!(type_of(w.base(), 5, a.cols()).unwrap(), 5);
}

#[test]
fn capped_exact_profile_is_not_certified() {
    let opts = PipelineOptions { caps: Caps::default().with_max_r(3), ..PipelineOptions::default() };
    let r = model_complexities(&parse_complex("[12][13][23]").unwrap(), &TableDims::parse("3,3").unwrap(), &opts).unwrap();
    assert_eq!(r.g(), Some(9));
    assert_eq!(r.m(), None);
    assert_eq!(r.markov.cap(), Some(CapKind::LiftLevel));
}

/// The profile from candidate degrees agrees with universal Markov bases of
/// the lifts themselves.
#[test]
fn structured_profile_matches_direct() {
    for (model, dims, r_max) in [
        ("[1][2]", "3", 4),
        ("[12][13][4]", "2,2,2", 3),
        ("[12][34]", "2,2,2", 3),
        ("[123][34]", "2,2,2", 3),
        ("[12][14][23][34]", "2,2,2", 3),
        ("[12][13][23]", "2,3", 3),
        ("[12][13][23]", "3,3", 3),
    ] {
        let (a, b) = matrices(model, dims);
        let g = graver_complexity(&a, &b, &Caps::default()).unwrap();
        let caps = Caps::default().with_max_r(r_max);
        let p = markov_profile(&a, &b, &g, ProfileMode::Exact, &caps).unwrap();
        let direct = markov_profile_direct(&a, &b, r_max.min(g.value), &Caps::default()).unwrap();
        let structured: Vec<usize> = p.profile.iter().map(|e| e.max_type).collect();
        assert_eq!(structured, direct, "{model} {dims}");
    }
}

#[test]
fn gamma_relations_expand_to_graver_elements() {
    let (a, b) = matrices("[12][13][23]", "3,3");
    let g = graver_complexity(&a, &b, &Caps::default()).unwrap();
    let mut checked = 0;
    for z in g.relations.vectors().iter().filter(|z| z.norm1() <= Int::from(4i64)) {
        let gamma = GammaVector::from_relation(z);
        let u = gamma.expand(&g.generators).unwrap();
        let t = u.slice_count();
        assert_eq!(t as u64, gamma.norm1());
        let lifted = lawrence_lift(&a, &b, t).unwrap();
        assert!(lifted.matrix.in_kernel(u.base()));
        assert!(has_conformal_decomposition(u.base(), &lifted.matrix).unwrap().is_none(), "{z} decomposes");
        checked += 1;
    }
    assert!(checked >= 20);
    let w = g.witness.unwrap().expand(&g.generators).unwrap();
    let lifted = lawrence_lift(&a, &b, 9).unwrap();
    assert!(lifted.matrix.in_kernel(w.base()));
}

#[test]
fn pipeline_reports() {
    let r = report("[123][124][134][234]", "2,2,2", ProfileMode::Exact);
    assert_eq!((r.m(), r.g(), r.lb()), (Some(2), Some(2), Some(2)));
    assert!(r.markers.is_empty());
    assert_profile_shape(r.markov.value().unwrap());
    r.verify().unwrap();

    let r = report("[12][14][23][34]", "2,2,2", ProfileMode::Exact);
    assert_eq!((r.m(), r.g()), (Some(4), Some(5)));
    assert!(r.markov.value().unwrap().certified);

    let r = report("[123]", "2,2", ProfileMode::Exact);
    assert_eq!((r.m(), r.g(), r.lb()), (Some(0), Some(0), Some(0)));
    assert_eq!(r.markers, vec![Marker::SeparableLift, Marker::TrivialKernel]);
}

#[test]
fn pipeline_preconditions() {
    let opts = PipelineOptions::default();
    let dims = TableDims::parse("2,2,2").unwrap();
    let err = model_complexities(&parse_complex("[23][4]").unwrap(), &dims, &opts).unwrap_err();
    assert!(matches!(err, Error::VertexNotInComplex(1)));
    let err = model_complexities(&parse_complex("[12][13]").unwrap(), &dims, &opts).unwrap_err();
    assert!(matches!(err, Error::DimensionMismatch(_)));
}

#[test]
fn reducible_norms() {
    let caps = Caps::default();
    let dims = TableDims::parse("2,2,2,2").unwrap();
    let c = reducible_norm_check(&parse_complex("[12][13][23][24][34]").unwrap(), &dims, &caps).unwrap();
    assert_eq!(c.reduction.separator, vec![2, 3]);
    assert!(c.holds(), "{c:?}");

    let c = reducible_norm_check(&parse_complex("[12][34]").unwrap(), &dims, &caps).unwrap();
    assert_eq!(c.full, 4);
    assert!(c.holds());

    let c = reducible_norm_check(&parse_complex("[123][4]").unwrap(), &dims, &caps).unwrap();
    assert_eq!((c.l1, c.l2, c.full), (0, 0, 4));
    assert!(c.holds());

    let err = reducible_norm_check(&parse_complex("[12][23][13]").unwrap(), &TableDims::parse("2,2,2").unwrap(), &caps);
    assert!(matches!(err, Err(Error::NotReducible)));
}

#[test]
fn big_moves() {
    let delta = parse_complex("[12][13][23]").unwrap();
    let parity = big_move_generator(2).unwrap();
    assert_eq!(parity, IntVector::from_i64s(&[1, -1, -1, 1, -1, 1, 1, -1]));

    let u = big_move_generator(3).unwrap();
    assert_eq!(u.support().len(), 12);
    let a = build_model_matrix(&delta, &TableDims::parse("3,3,2").unwrap()).unwrap().matrix;
    let universal = universal_markov_basis(&a, &Caps::default()).unwrap();
    assert!(universal.contains(&u));

    for m in 2..=6 {
        let a = build_model_matrix(&delta, &TableDims::new(vec![m, m, 2])).unwrap().matrix;
        let u = big_move_generator(m).unwrap();
        assert!(a.in_kernel(&u));
        assert_eq!(u.norm1(), Int::from(4 * m as i64));
    }
    assert!(big_move_generator(1).is_err());
}
