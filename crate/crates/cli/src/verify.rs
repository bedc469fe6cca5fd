//! The `bnb verify` self-checks: worked examples, brute-force oracle
//! sweeps, model-interpreter agreement and the discrepancy-ordering laws,
//! all sized to finish in seconds.

use num::rational::Ratio;

use bnb_bbm::demo::{demo_initial, demo_tree, DemoProblem};
use bnb_bbm::{
    check_prune_conditions, materialize_tree, parse_trace, render_trace, replay_trace,
    run_admissible, OrderedGenerator, Position, RoundRobinEagerStrengthen, SearchState,
    TreeProblem,
};
use bnb_core::{dds_priorities, generate_tasks, CancelToken, OrderedMode, Problem};
use bnb_cli::synth::{random_graph, random_knapsack, random_matrix};
use bnb_cli::{AnyProblem, RunParams, Skeleton};
use bnb_problems::bbm_codec::{CliqueBbm, KnapsackBbm, TspBbm};
use bnb_problems::clique::{CliqueProblem, Graph};
use bnb_problems::knapsack::{Item, KnapsackInstance, KnapsackProblem};
use bnb_problems::oracle::{knapsack_dp, max_clique_brute, tsp_brute};
use bnb_problems::tsp::{DistanceMatrix, TspProblem};

/// The 8-vertex, 15-edge example graph whose unique maximum clique is
/// {0, 3, 5, 6}.
const EXAMPLE_EDGES: [(u32, u32); 15] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 5),
    (0, 6),
    (0, 7),
    (1, 2),
    (1, 6),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 5),
    (3, 6),
    (4, 7),
    (5, 6),
];

/// The 4-item desk knapsack: capacity 16, optimum 90 from items 0 and 2.
fn desk_knapsack() -> KnapsackInstance {
    let items = [
        Item { profit: 45, weight: 3 },
        Item { profit: 30, weight: 5 },
        Item { profit: 45, weight: 9 },
        Item { profit: 10, weight: 5 },
    ];
    KnapsackInstance::new(16, &items).expect("weights are positive")
}

/// The 4-city desk matrix; every one of its six tours has length 14.
fn desk_matrix() -> DistanceMatrix {
    let entries = vec![0, 1, 2, 3, 1, 0, 4, 5, 2, 4, 0, 6, 3, 5, 6, 0];
    DistanceMatrix::new(4, entries).expect("matrix is symmetric")
}

fn engine_objectives(problem: &AnyProblem, seed: u64) -> Result<Vec<u64>, String> {
    let mut objectives = Vec::new();
    let runs: [(Skeleton, usize, bool); 5] = [
        (Skeleton::Seq, 1, false),
        (Skeleton::Ordered, 3, false),
        (Skeleton::Ordered, 3, true),
        (Skeleton::Unordered, 1, false),
        (Skeleton::Unordered, 2, false),
    ];
    for (skeleton, workers, diversify) in runs {
        let params = RunParams {
            workers,
            spawn_depth: 1,
            diversify,
            mode: OrderedMode::Deterministic,
            seed,
        };
        let outcome = problem
            .run(skeleton, &params, &CancelToken::never())
            .map_err(|e| format!("{skeleton} with {workers} workers: {e}"))?;
        objectives.push(outcome.objective);
    }
    Ok(objectives)
}

fn example_clique_across_engines() -> Result<(), String> {
    let graph = Graph::from_edges(8, &EXAMPLE_EDGES).expect("example edges are clean");
    let problem = CliqueProblem::new(graph);

    let result = bnb_core::sequential_search(&problem).map_err(|e| e.to_string())?;
    let mut originals: Vec<u32> = result
        .solution
        .members
        .iter()
        .map(|&v| problem.graph.original_id(v))
        .collect();
    originals.sort();
    if originals != [0, 3, 5, 6] {
        return Err(format!("sequential clique members {originals:?}, want [0, 3, 5, 6]"));
    }
    let members = &result.solution.members;
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            if !problem.graph.are_adjacent(u, v) {
                return Err(format!("members {u} and {v} are not adjacent"));
            }
        }
    }

    let any = AnyProblem::Clique(problem);
    let objectives = engine_objectives(&any, 7)?;
    if objectives.iter().any(|&o| o != 4) {
        return Err(format!("engine objectives {objectives:?}, want all 4"));
    }
    Ok(())
}

fn worked_knapsack_values() -> Result<(), String> {
    let instance = desk_knapsack();
    let seventy = instance.fractional_bound(1, 13);
    if seventy != Ratio::from_integer(70) {
        return Err(format!("fractional bound {seventy}, want 70"));
    }
    let problem = KnapsackProblem::new(instance);
    let root = problem.root();
    let root_h = problem.pruning_heuristic(&root);
    if root_h != Ratio::from_integer(115) {
        return Err(format!("root heuristic {root_h}, want 115"));
    }
    let first = problem
        .children(&root)
        .into_iter()
        .next()
        .ok_or("root has no children")?;
    if first.solution.chosen != [0] {
        return Err(format!("first child chose {:?}, want [0]", first.solution.chosen));
    }
    let first_h = problem.pruning_heuristic(&first);
    if first_h != Ratio::from_integer(115) {
        return Err(format!("child heuristic {first_h}, want 115"));
    }
    let objectives = engine_objectives(&AnyProblem::Knapsack(problem), 3)?;
    if objectives.iter().any(|&o| o != 90) {
        return Err(format!("engine objectives {objectives:?}, want all 90"));
    }
    Ok(())
}

fn worked_tsp_values() -> Result<(), String> {
    let matrix = desk_matrix();
    let brute = tsp_brute(&matrix);
    if brute != 14 {
        return Err(format!("brute-force optimum {brute}, want 14"));
    }
    let objectives = engine_objectives(&AnyProblem::Tsp(TspProblem::new(matrix)), 5)?;
    if objectives.iter().any(|&o| o != 14) {
        return Err(format!("engine objectives {objectives:?}, want all 14"));
    }
    Ok(())
}

fn demo_reduction_trace() -> Result<(), String> {
    let tree = demo_tree();
    let initial = demo_initial(&tree, 3).map_err(|e| e.to_string())?;
    let mut policy = RoundRobinEagerStrengthen::new();
    let (final_state, trace) =
        run_admissible(initial.clone(), &mut policy, &DemoProblem, &tree)
            .map_err(|e| e.to_string())?;
    if trace.len() != 21 {
        return Err(format!("{} reductions, want 21", trace.len()));
    }
    if final_state.incumbent != Position::from_digits(&[1, 0, 0, 0]) {
        return Err(format!("final incumbent {}, want 1000", final_state.incumbent));
    }
    let text = render_trace(&trace);
    let parsed = parse_trace(&text).map_err(|e| e.to_string())?;
    if parsed != trace {
        return Err("trace text does not parse back to itself".to_string());
    }
    let replayed = replay_trace(&text, initial, &DemoProblem, &tree).map_err(|e| e.to_string())?;
    if !replayed.is_final() {
        return Err("replayed state is not final".to_string());
    }
    Ok(())
}

fn oracle_sweep(problem_name: &str) -> Result<(), String> {
    for seed in 0..8u64 {
        let (any, oracle) = match problem_name {
            "clique" => {
                let n = 5 + (seed as usize % 5);
                let percent = [30, 50, 80][seed as usize % 3];
                let graph = random_graph(n, percent, seed);
                let oracle = max_clique_brute(graph.n(), &graph.edges()) as u64;
                (AnyProblem::Clique(CliqueProblem::new(graph)), oracle)
            }
            "knapsack" => {
                let instance = random_knapsack(6 + seed as usize % 6, seed);
                let tuples: Vec<(u64, u64)> =
                    instance.items.iter().map(|i| (i.profit, i.weight)).collect();
                let oracle = knapsack_dp(instance.capacity, &tuples);
                (AnyProblem::Knapsack(KnapsackProblem::new(instance)), oracle)
            }
            _ => {
                let matrix = random_matrix(5 + seed as usize % 3, 50, seed);
                let oracle = tsp_brute(&matrix);
                (AnyProblem::Tsp(TspProblem::new(matrix)), oracle)
            }
        };
        let objectives = engine_objectives(&any, seed)?;
        if objectives.iter().any(|&o| o != oracle) {
            return Err(format!("seed {seed}: engines {objectives:?}, oracle {oracle}"));
        }
    }
    Ok(())
}

/// Runs the model interpreter over a materialised codec tree and returns
/// the objective of its final incumbent.
fn interpret<G, V>(codec: &G, depth: usize) -> Result<V, String>
where
    G: OrderedGenerator + TreeProblem<<G as OrderedGenerator>::Letter, Value = V>,
    V: Clone + std::fmt::Debug,
{
    let tree = materialize_tree(codec, depth).map_err(|e| e.to_string())?;
    let segments: Vec<Position> = tree.children(&Position::root()).collect();
    let initial = SearchState::initial(&tree, &segments, 2).map_err(|e| e.to_string())?;
    let mut policy = RoundRobinEagerStrengthen::new();
    let (final_state, _) =
        run_admissible(initial, &mut policy, codec, &tree).map_err(|e| e.to_string())?;
    Ok(codec.objective(&tree.label_word(&final_state.incumbent)))
}

fn interpreter_agreement() -> Result<(), String> {
    let graph = random_graph(7, 50, 21);
    let oracle = max_clique_brute(graph.n(), &graph.edges());
    let got = interpret(&CliqueBbm { graph: &graph }, graph.n() + 1)?;
    if got != oracle {
        return Err(format!("clique interpreter {got}, oracle {oracle}"));
    }

    let instance = random_knapsack(8, 22);
    let tuples: Vec<(u64, u64)> = instance.items.iter().map(|i| (i.profit, i.weight)).collect();
    let dp = knapsack_dp(instance.capacity, &tuples);
    let got = interpret(&KnapsackBbm { instance: &instance }, instance.items.len() + 1)?;
    if got != dp {
        return Err(format!("knapsack interpreter {got}, oracle {dp}"));
    }

    let matrix = random_matrix(5, 40, 23);
    let brute = tsp_brute(&matrix);
    let got = interpret(&TspBbm { matrix: &matrix }, matrix.n())?;
    if got != bnb_problems::tsp::TourBound::Finished(brute) {
        return Err(format!("tsp interpreter {got:?}, oracle {brute}"));
    }
    Ok(())
}

fn prune_conditions() -> Result<(), String> {
    let graph = random_graph(8, 50, 31);
    let codec = CliqueBbm { graph: &graph };
    let tree = materialize_tree(&codec, graph.n() + 1).map_err(|e| e.to_string())?;
    let report = check_prune_conditions(&codec, &tree, 0, 0);
    if !report.exhaustive || !report.ok() {
        return Err(format!("clique predicate violations: {:?}", report.violations));
    }

    let instance = random_knapsack(8, 32);
    let codec = KnapsackBbm { instance: &instance };
    let tree = materialize_tree(&codec, instance.items.len() + 1).map_err(|e| e.to_string())?;
    let report = check_prune_conditions(&codec, &tree, 0, 0);
    if !report.exhaustive || !report.ok() {
        return Err(format!("knapsack predicate violations: {:?}", report.violations));
    }

    let matrix = random_matrix(5, 40, 33);
    let codec = TspBbm { matrix: &matrix };
    let tree = materialize_tree(&codec, matrix.n()).map_err(|e| e.to_string())?;
    let report = check_prune_conditions(&codec, &tree, 0, 0);
    if !report.exhaustive || !report.ok() {
        return Err(format!("tsp predicate violations: {:?}", report.violations));
    }
    Ok(())
}

/// Checks the three discrepancy-ordering laws on one task batch.
pub fn check_dds_laws<P: Problem>(tasks: &[bnb_core::Task<P>]) -> Result<(), String> {
    let assignment = dds_priorities(tasks);
    let priorities = &assignment.priorities;
    if priorities.len() != tasks.len() {
        return Err("one priority per task".to_string());
    }

    let totals: Vec<u64> = tasks
        .iter()
        .map(|t| t.path.iter().map(|&s| u64::from(s)).sum())
        .collect();
    for (index, task) in tasks.iter().enumerate() {
        if task.path.iter().all(|&s| s == 0) && priorities[index] != 0 {
            return Err(format!(
                "all-leftmost path {:?} got priority {}",
                task.path, priorities[index]
            ));
        }
    }
    for a in 0..tasks.len() {
        for b in 0..tasks.len() {
            if totals[a] < totals[b] && priorities[a] >= priorities[b] {
                return Err(format!(
                    "path {:?} ({} discrepancies) ranked after {:?} ({})",
                    tasks[a].path, totals[a], tasks[b].path, totals[b]
                ));
            }
        }
    }
    let mut seen = priorities.clone();
    seen.sort();
    seen.dedup();
    if seen.len() != priorities.len() {
        return Err("priorities are not unique".to_string());
    }
    Ok(())
}

fn dds_laws() -> Result<(), String> {
    let mut batches = 0;
    for seed in 0..15u64 {
        for depth in [1, 2, 3] {
            let problem = KnapsackProblem::new(random_knapsack(7, seed));
            check_dds_laws(&generate_tasks(&problem, depth))
                .map_err(|e| format!("knapsack seed {seed} depth {depth}: {e}"))?;
            let problem = CliqueProblem::new(random_graph(7, 50, seed));
            check_dds_laws(&generate_tasks(&problem, depth))
                .map_err(|e| format!("clique seed {seed} depth {depth}: {e}"))?;
            batches += 2;
        }
    }
    if batches < 30 {
        return Err(format!("only {batches} task batches checked"));
    }
    Ok(())
}

/// Runs every check, printing one line each. Oracle disagreements exit 3,
/// law violations exit 2, success 0.
pub fn run() -> u8 {
    let checks: [(&str, u8, fn() -> Result<(), String>); 9] = [
        ("example-clique-engines", 3, example_clique_across_engines),
        ("worked-knapsack-values", 3, worked_knapsack_values),
        ("worked-tsp-values", 3, worked_tsp_values),
        ("demo-reduction-trace", 3, demo_reduction_trace),
        ("oracle-sweep-clique", 3, || oracle_sweep("clique")),
        ("oracle-sweep-knapsack", 3, || oracle_sweep("knapsack")),
        ("oracle-sweep-tsp", 3, || oracle_sweep("tsp")),
        ("interpreter-agreement", 3, interpreter_agreement),
        ("prune-conditions", 2, prune_conditions),
    ];
    let mut worst = 0u8;
    for (name, class, check) in checks {
        match check() {
            Ok(()) => println!("ok {name}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                worst = worst.max(class);
            }
        }
    }
    match dds_laws() {
        Ok(()) => println!("ok dds-ordering-laws"),
        Err(why) => {
            println!("FAIL dds-ordering-laws: {why}");
            worst = worst.max(2);
        }
    }
    worst
}
