mod common;

use bnb_core::sequential_search;
use bnb_problems::clique::CliqueProblem;
use bnb_problems::io::{
    detect_format, generate_random_tsp, load, parse_dimacs_clique, parse_pisinger,
    parse_tsplib, serialise_dimacs, serialise_pisinger, serialise_tsplib, DimacsError,
    Format, Payload, PisingerError, RandomTspError, TsplibError,
};
use bnb_problems::knapsack::{Item, KnapsackInstance};
use bnb_problems::oracle::tsp_brute;
use bnb_problems::tsp::TourBound;
use bnb_problems::tsp::TspProblem;
use proptest::prelude::*;

use common::{random_edges, random_items, random_symmetric};

fn data(file: &str) -> String {
    format!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/{}"), file)
}

#[test]
fn dimacs_parses_a_minimal_path_graph() {
    let parsed = parse_dimacs_clique("p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
    assert!(parsed.warnings.is_empty());
    let g = parsed.graph;
    assert_eq!(g.n(), 3);
    assert_eq!(g.edges().len(), 2);
    // The degree-2 middle vertex is relabelled first.
    assert_eq!(g.original_id(0), 1);
}

#[test]
fn dimacs_rejects_malformed_input() {
    assert!(matches!(
        parse_dimacs_clique("e 1 2\n"),
        Err(DimacsError::MissingProblemLine)
    ));
    assert!(matches!(
        parse_dimacs_clique("p edge 3 2\ne 1 9\n"),
        Err(DimacsError::VertexOutOfRange(2, 9, 3))
    ));
    assert!(matches!(
        parse_dimacs_clique("p edge 3 1\ne 2 2\n"),
        Err(DimacsError::SelfLoop(2, 2))
    ));
    assert!(matches!(
        parse_dimacs_clique("p edge 3 1\nx 1 2\n"),
        Err(DimacsError::Malformed(2, _))
    ));
}

#[test]
fn dimacs_collapses_duplicates_and_warns_on_count_mismatch() {
    let parsed = parse_dimacs_clique("p edge 2 3\ne 1 2\ne 2 1\ne 1 2\n").unwrap();
    assert_eq!(parsed.graph.edges(), vec![(0, 1)]);
    assert_eq!(parsed.warnings.len(), 1);
    assert!(parsed.warnings[0].contains("declared 3"));
}

#[test]
fn the_example_graph_file_loads_and_solves() {
    let loaded = load(&data("fig1.clq")).unwrap();
    assert_eq!(loaded.format, Format::DimacsClique);
    assert!(loaded.warnings.is_empty());
    let Payload::Clique(graph) = loaded.payload else {
        panic!("expected a clique payload")
    };
    assert_eq!(graph.n(), 8);
    assert_eq!(graph.edges().len(), 15);
    let result = sequential_search(&CliqueProblem::new(graph)).unwrap();
    assert_eq!(result.bound, 4);
}

#[test]
fn pisinger_parses_a_single_item_block() {
    let instances = parse_pisinger("tiny\nn 1\nc 10\n1,5,4,0\n").unwrap();
    assert_eq!(instances.len(), 1);
    let inst = &instances[0];
    assert_eq!(inst.capacity, 10);
    assert_eq!(inst.items, vec![Item { profit: 5, weight: 4 }]);
    assert_eq!(inst.name.as_deref(), Some("tiny"));
    assert_eq!(inst.published_optimum, None);
}

#[test]
fn pisinger_parses_the_worked_example_block() {
    let text = "table1\nn 4\nc 16\nz 90\ntime 0.01\n1,45,3,1\n2,30,5,0\n3,45,9,1\n4,10,5,0\n-----\n";
    let instances = parse_pisinger(text).unwrap();
    assert_eq!(instances.len(), 1);
    let inst = &instances[0];
    assert_eq!(inst.capacity, 16);
    assert_eq!(
        inst.items,
        vec![
            Item { profit: 45, weight: 3 },
            Item { profit: 30, weight: 5 },
            Item { profit: 45, weight: 9 },
            Item { profit: 10, weight: 5 },
        ]
    );
    assert_eq!(inst.published_optimum, Some(90));
}

#[test]
fn pisinger_rejects_bad_blocks() {
    assert!(matches!(
        parse_pisinger("bad\nn 3\nc 5\n1,2,2,0\n2,3,1,0\n"),
        Err(PisingerError::CountMismatch(_, 3, 2))
    ));
    assert!(matches!(
        parse_pisinger("bad\nn 1\nc 5\n1,2,0,0\n"),
        Err(PisingerError::Item(_, _))
    ));
    assert!(matches!(
        parse_pisinger("bad\nc 5\n"),
        Err(PisingerError::MissingHeader(_, "n"))
    ));
    assert!(matches!(
        parse_pisinger("bad\nn 1\nc 5\nnot-an-item\n"),
        Err(PisingerError::MalformedItem(_, _))
    ));
}

#[test]
fn tsplib_computes_euclidean_distances() {
    let text = "NAME: two\nTYPE: TSP\nDIMENSION: 2\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 3 4\nEOF\n";
    let m = parse_tsplib(text).unwrap();
    assert_eq!(m.d(0, 1), 5);
    assert_eq!(m.d(1, 0), 5);
    assert_eq!(m.d(0, 0), 0);
}

#[test]
fn tsplib_collinear_cities_have_one_tour() {
    let text = "TYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 0\n3 2 0\nEOF\n";
    let m = parse_tsplib(text).unwrap();
    assert_eq!(tsp_brute(&m), 4);
    let result = sequential_search(&TspProblem::new(m)).unwrap();
    assert_eq!(result.bound, TourBound::Finished(4));
}

#[test]
fn tsplib_rejects_unsupported_files() {
    assert!(matches!(
        parse_tsplib("TYPE: ATSP\nDIMENSION: 2\n"),
        Err(TsplibError::UnsupportedType(_))
    ));
    assert!(matches!(
        parse_tsplib("TYPE: TSP\nDIMENSION: 2\nEDGE_WEIGHT_TYPE: CEIL_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 1\n"),
        Err(TsplibError::UnsupportedWeightType(_))
    ));
    assert!(matches!(
        parse_tsplib("TYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 1\n"),
        Err(TsplibError::DimensionMismatch(3, 2))
    ));
    assert!(matches!(
        parse_tsplib("TYPE: TSP\nDIMENSION: 2\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: UPPER_ROW\nEDGE_WEIGHT_SECTION\n1\n"),
        Err(TsplibError::UnsupportedWeightFormat(_))
    ));
}

#[test]
fn geographic_distances_match_the_hand_derived_goldens() {
    let loaded = load(&data("geo3.tsp")).unwrap();
    let Payload::Tsp(m) = loaded.payload else { panic!("expected a tsp payload") };
    // Worked through the geographical formula by hand: PI = 3.141592,
    // RRR = 6378.388, truncating casts.
    assert_eq!(m.d(0, 1), 153);
    assert_eq!(m.d(0, 2), 328);
    assert_eq!(m.d(1, 2), 445);
    assert_eq!(tsp_brute(&m), 926);
}

#[test]
fn explicit_matrix_file_matches_the_worked_instance() {
    let loaded = load(&data("small4.tsp")).unwrap();
    let Payload::Tsp(m) = loaded.payload else { panic!("expected a tsp payload") };
    assert_eq!(m.n(), 4);
    assert_eq!(m.d(1, 3), 5);
    assert_eq!(tsp_brute(&m), 14);
}

#[test]
fn random_generation_is_deterministic_per_seed() {
    let a = generate_random_tsp(5, 1).unwrap();
    let b = generate_random_tsp(5, 1).unwrap();
    assert_eq!(a, b);
    let c = generate_random_tsp(5, 2).unwrap();
    assert_ne!(a, c);

    let tiny = generate_random_tsp(2, 7).unwrap();
    assert_eq!(tiny.d(0, 0), 0);
    assert_eq!(tiny.d(0, 1), tiny.d(1, 0));

    assert_eq!(generate_random_tsp(1, 7), Err(RandomTspError::TooFewCities(1)));
}

#[test]
fn formats_are_detected_by_extension_or_spec() {
    assert_eq!(detect_format("x/y/graph.clq"), Some(Format::DimacsClique));
    assert_eq!(detect_format("graph.col"), Some(Format::DimacsClique));
    assert_eq!(detect_format("knap.csv"), Some(Format::PisingerKnapsack));
    assert_eq!(detect_format("knap.kp"), Some(Format::PisingerKnapsack));
    assert_eq!(detect_format("cities.tsp"), Some(Format::Tsplib));
    assert_eq!(detect_format("rand_tsp:10:42"), Some(Format::RandomTspSpec));
    assert_eq!(detect_format("notes.txt"), None);
}

#[test]
fn random_specs_load_like_files() {
    let loaded = load("rand_tsp:6:42").unwrap();
    assert_eq!(loaded.format, Format::RandomTspSpec);
    let Payload::Tsp(m) = loaded.payload else { panic!("expected a tsp payload") };
    assert_eq!(m, generate_random_tsp(6, 42).unwrap());

    assert!(load("rand_tsp:borked").is_err());
}

#[test]
fn golden_files_round_trip_to_equal_payloads() {
    let fig1 = std::fs::read_to_string(data("fig1.clq")).unwrap();
    let first = parse_dimacs_clique(&fig1).unwrap().graph;
    let second = parse_dimacs_clique(&serialise_dimacs(&first)).unwrap().graph;
    assert_eq!(first, second);

    let desk = std::fs::read_to_string(data("knap_desk.csv")).unwrap();
    let first = parse_pisinger(&desk).unwrap();
    let second = parse_pisinger(&serialise_pisinger(&first)).unwrap();
    assert_eq!(first, second);

    for file in ["small4.tsp", "geo3.tsp", "euc5.tsp"] {
        let text = std::fs::read_to_string(data(file)).unwrap();
        let first = parse_tsplib(&text).unwrap();
        let second = parse_tsplib(&serialise_tsplib(&first)).unwrap();
        assert_eq!(first, second, "{file}");
    }
}

proptest! {
    #[test]
    fn random_graphs_round_trip_through_dimacs(n in 1usize..12, percent in 0u32..100, seed in 0u64..500) {
        let edges = random_edges(n, percent, seed);
        let graph = bnb_problems::clique::Graph::from_edges(n, &edges).unwrap();
        let reparsed = parse_dimacs_clique(&serialise_dimacs(&graph)).unwrap();
        prop_assert_eq!(graph, reparsed.graph);
        prop_assert!(reparsed.warnings.is_empty());
    }

    #[test]
    fn random_instances_round_trip_through_pisinger(
        n in 1usize..10,
        capacity in 1u64..300,
        seed in 0u64..500,
        z in prop::option::of(0u64..1000),
    ) {
        let mut inst = KnapsackInstance::new(capacity, &random_items(n, seed)).unwrap();
        inst.name = Some(format!("inst_{seed}"));
        inst.published_optimum = z;
        let reparsed = parse_pisinger(&serialise_pisinger(std::slice::from_ref(&inst))).unwrap();
        prop_assert_eq!(vec![inst], reparsed);
    }

    #[test]
    fn random_matrices_round_trip_through_tsplib(n in 2usize..8, seed in 0u64..500) {
        let m = random_symmetric(n, 1000, seed);
        let reparsed = parse_tsplib(&serialise_tsplib(&m)).unwrap();
        prop_assert_eq!(m, reparsed);
    }
}
