use proptest::prelude::*;

use sqcolor::choosability::{chromatic_number, is_l_colorable, ListAssignment};
use sqcolor::Graph;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(bits)
                .filter_map(|(e, keep)| keep.then_some(e));
            Graph::new(n, edges).unwrap()
        })
    })
}

fn graph_with_lists(max_n: usize, palette: u32) -> impl Strategy<Value = (Graph, Vec<Vec<u32>>)> {
    graph(max_n).prop_flat_map(move |g| {
        let n = g.vertex_count();
        let list = proptest::collection::btree_set(0..palette, 1..=palette as usize)
            .prop_map(|s| s.into_iter().collect::<Vec<u32>>());
        (Just(g), proptest::collection::vec(list, n))
    })
}

fn naive_colorable(g: &Graph, lists: &[Vec<u32>]) -> bool {
    fn go(g: &Graph, lists: &[Vec<u32>], colors: &mut Vec<u32>) -> bool {
        let v = colors.len();
        if v == lists.len() {
            return true;
        }
        for &c in &lists[v] {
            if g.neighbors(v).iter().all(|&u| u >= v || colors[u] != c) {
                colors.push(c);
                if go(g, lists, colors) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    go(g, lists, &mut Vec::new())
}

fn bfs_distances(g: &Graph, s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[s] = Some(0);
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            if dist[u].is_none() {
                dist[u] = Some(dist[v].unwrap() + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

proptest! {
    #[test]
    fn square_matches_distance_two(g in graph(9)) {
        let sq = g.square();
        for u in 0..g.vertex_count() {
            let dist = bfs_distances(&g, u);
            for (v, d) in dist.iter().enumerate() {
                let near = u != v && d.is_some_and(|d| d <= 2);
                prop_assert_eq!(sq.has_edge(u, v), near);
            }
        }
    }

    #[test]
    fn square_is_monotone_under_edge_deletion(g in graph(8)) {
        let sq = g.square();
        for (u, v) in g.edges() {
            let smaller = g.without_edge(u, v).unwrap().square();
            prop_assert!(smaller.edges().all(|(a, b)| sq.has_edge(a, b)));
        }
    }

    #[test]
    fn total_graph_is_square_of_subdivision(g in graph(8)) {
        prop_assert_eq!(g.subdivide().square(), g.total_graph());
    }

    #[test]
    fn solver_matches_naive((g, lists) in graph_with_lists(6, 4)) {
        let assignment = ListAssignment::new(lists.clone());
        let report = is_l_colorable(&g, &assignment, 0).unwrap();
        prop_assert_eq!(report.is_colorable(), naive_colorable(&g, &lists));
        if let sqcolor::choosability::Outcome::Colorable { coloring } = &report.outcome {
            prop_assert!(coloring.is_proper(&g) && coloring.respects(&assignment));
        }
    }

    #[test]
    fn larger_lists_stay_colorable((g, lists) in graph_with_lists(7, 4), extra in 0u32..6) {
        let base = ListAssignment::new(lists.clone());
        if is_l_colorable(&g, &base, 0).unwrap().is_colorable() {
            let grown: Vec<Vec<u32>> = lists.iter().map(|l| {
                let mut l = l.clone();
                l.push(extra);
                l
            }).collect();
            prop_assert!(is_l_colorable(&g, &ListAssignment::new(grown), 0).unwrap().is_colorable());
        }
    }

    #[test]
    fn constant_lists_follow_chromatic_number(g in graph(7), k in 1usize..6) {
        let colors: Vec<u32> = (0..k as u32).collect();
        let lists = ListAssignment::uniform(g.vertex_count(), &colors);
        let colorable = is_l_colorable(&g, &lists, 0).unwrap().is_colorable();
        prop_assert_eq!(colorable, chromatic_number(&g) <= k);
    }
}
