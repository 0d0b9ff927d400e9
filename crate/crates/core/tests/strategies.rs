mod common;

use std::collections::HashMap;

use colorgame_core::graph::{gen_cubic_cycle_matching, gen_gnp};
use colorgame_core::strategy::{
    greedy_choice, killing_move, AliceGreedy, AliceTwoPhase, BobCubic, BobMirror, ForestEndgame, OptimalPlayer,
    RandomPlayer,
};
use colorgame_core::structure::cubic::{HSource, HSubgraph};
use colorgame_core::{play_game, GameState, Graph, MoveChoice, ParameterSet, Player, RngSeed, Strategy};
use common::{arb_graph, brute_available, brute_dead};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// Upper 99.9% point of chi-square with `df` degrees of freedom
/// (Wilson-Hilferty).
fn chi2_crit(df: f64) -> f64 {
    let z = 3.09;
    let a = 2.0 / (9.0 * df);
    df * (1.0 - a + z * a.sqrt()).powi(3)
}

fn chi2(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let e = total as f64 / counts.len() as f64;
    counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum()
}

/// Plays `moves` uniformly random legal moves, computed by brute force.
fn random_state<'g>(g: &'g Graph, k: u32, moves: usize, seed: u64) -> GameState<'g> {
    let mut rng = RngSeed::new(seed, 99).rng();
    let mut st = GameState::new(g, k, Player::Alice).unwrap();
    for _ in 0..moves {
        if st.detect_dead_vertex().is_some() {
            break;
        }
        let legal: Vec<(u32, u32)> = st
            .uncolored()
            .flat_map(|v| brute_available(g, st.colors(), k, v).into_iter().map(move |c| (v, c)))
            .collect();
        let Some(&(v, c)) = legal.choose(&mut rng) else { break };
        st.apply_move(MoveChoice::new(v, c)).unwrap();
    }
    st
}

fn legal(st: &GameState<'_>, m: Option<MoveChoice>) -> bool {
    m.is_some_and(|m| st.check_move(m).is_ok())
}

#[test]
fn parameter_examples() {
    let e2 = std::f64::consts::E.powi(2);
    let ps = ParameterSet::derive(1000, e2, 2.0).unwrap();
    assert!((ps.big_d - e2 / 2.0).abs() < 1e-9);
    assert_eq!(ps.k, 8);
    let ps = ParameterSet::derive(10_000, 100.0, 13.0).unwrap();
    assert_eq!(ps.k, 283);
    let gamma = 16.0 * 100f64.ln().powi(2) / (13.0 * 100f64.powf(1.0 - 1.0 / 13.0));
    assert!((ps.gamma - gamma).abs() < 1e-12);
    let beta = 13.0 * 100f64.powf(1.0 - 1.0 / 13.0) / 100f64.ln();
    assert!((ps.beta - beta).abs() < 1e-9);
    assert!((ps.theta_lower - 7.0 * 13.0 / 8.0).abs() < 1e-12);
    assert!((ps.p - 0.01).abs() < 1e-15);
    assert!(ParameterSet::derive(100, 2.7, 13.0).is_err());
    assert!(ParameterSet::derive(100, 10.0, 0.0).is_err());
}

#[test]
fn greedy_examples() {
    let k3 = Graph::complete(3);
    let st = GameState::new(&k3, 3, Player::Alice).unwrap();
    assert_eq!(greedy_choice(&st), Some(MoveChoice::new(0, 1)));
    let p = Graph::path(3);
    let mut st = GameState::new(&p, 2, Player::Bob).unwrap();
    st.apply_move(MoveChoice::new(0, 1)).unwrap();
    assert_eq!(greedy_choice(&st), Some(MoveChoice::new(1, 2)));
}

#[test]
fn mirror_examples() {
    let g = Graph::empty(8);
    let mut st = GameState::new(&g, 3, Player::Alice).unwrap();
    st.apply_move(MoveChoice::new(4, 1)).unwrap();
    let mut bob = BobMirror::new(RngSeed::new(1, 0));
    let m = bob.choose(&st).unwrap();
    assert_eq!(m.color, 1);
    assert_ne!(m.vertex, 4);

    let star = Graph::star(5);
    let mut st = GameState::new(&star, 3, Player::Alice).unwrap();
    st.apply_move(MoveChoice::new(0, 1)).unwrap();
    let mut bob = BobMirror::new(RngSeed::new(1, 0));
    let m = bob.choose(&st).unwrap();
    assert!(st.check_move(m).is_ok());
    assert_ne!(m.color, 1);
    assert_eq!(bob.report().mirror_fallbacks, 1);
}

#[test]
fn mirror_is_uniform_on_u_i() {
    // Alice colored vertex 0 with 2 on a path plus isolated vertices: U_2 is
    // everything except 0 and 1.
    let g = Graph::from_edges(12, &[(0, 1), (2, 3), (3, 4)]).unwrap();
    let mut st = GameState::new(&g, 3, Player::Alice).unwrap();
    st.apply_move(MoveChoice::new(0, 2)).unwrap();
    let mut bob = BobMirror::new(RngSeed::new(8, 0));
    let mut counts: HashMap<u32, u64> = HashMap::new();
    for _ in 0..10_000 {
        let m = bob.choose(&st).unwrap();
        assert_eq!(m.color, 2);
        *counts.entry(m.vertex).or_default() += 1;
    }
    let support: Vec<u32> = (2..12).collect();
    assert_eq!(counts.keys().copied().collect::<std::collections::BTreeSet<_>>(), support.iter().copied().collect());
    let c: Vec<u64> = support.iter().map(|v| counts[v]).collect();
    assert!(chi2(&c) < chi2_crit((c.len() - 1) as f64), "{c:?}");
}

#[test]
fn random_examples() {
    let g = Graph::path(2);
    let mut st = GameState::new(&g, 2, Player::Alice).unwrap();
    st.apply_move(MoveChoice::new(0, 1)).unwrap();
    let mut r = RandomPlayer::new(RngSeed::new(3, 0));
    assert_eq!(r.choose(&st), Some(MoveChoice::new(1, 2)));

    let st = GameState::new(&g, 2, Player::Alice).unwrap();
    let mut counts: HashMap<(u32, u32), u64> = HashMap::new();
    for _ in 0..10_000 {
        let m = r.choose(&st).unwrap();
        *counts.entry((m.vertex, m.color)).or_default() += 1;
    }
    assert_eq!(counts.len(), 4);
    let c: Vec<u64> = counts.values().copied().collect();
    assert!(chi2(&c) < chi2_crit(3.0), "{counts:?}");
}

#[test]
fn random_is_uniform_over_pairs() {
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4)]).unwrap();
    let mut st = GameState::new(&g, 3, Player::Alice).unwrap();
    st.apply_move(MoveChoice::new(1, 1)).unwrap();
    st.apply_move(MoveChoice::new(3, 2)).unwrap();
    let legal: Vec<(u32, u32)> = st
        .uncolored()
        .flat_map(|v| brute_available(&g, st.colors(), 3, v).into_iter().map(move |c| (v, c)))
        .collect();
    let mut r = RandomPlayer::new(RngSeed::new(4, 0));
    let mut counts: HashMap<(u32, u32), u64> = HashMap::new();
    for _ in 0..20_000 {
        let m = r.choose(&st).unwrap();
        *counts.entry((m.vertex, m.color)).or_default() += 1;
    }
    assert_eq!(counts.len(), legal.len());
    let c: Vec<u64> = legal.iter().map(|p| counts[p]).collect();
    assert!(chi2(&c) < chi2_crit((c.len() - 1) as f64), "{counts:?}");
}

#[test]
fn two_phase_with_many_colors_wins() {
    for s in 0..20 {
        let g = gen_gnp(60, 0.05, RngSeed::new(s, 0)).unwrap();
        let ps = ParameterSet::derive(60, 3.0, 13.0).unwrap();
        assert!(ps.k as usize > g.max_degree());
        let mut alice = AliceTwoPhase::new(ps);
        let mut bob = BobMirror::new(RngSeed::new(s, 1));
        let out = play_game(&g, ps.k, &mut alice, &mut bob, Player::Alice).unwrap();
        assert_eq!(out.winner, Player::Alice);
        // 2 gamma n >= n here, so the switch is on Alice's first move.
        assert!(2.0 * ps.gamma >= 1.0);
        assert_eq!(alice.report().phase_switch_move, Some(0));
    }
}

/// Replays the transcript up to the recorded switch and checks both switch
/// conditions from scratch.
fn check_switch_state(g: &Graph, ps: &ParameterSet, seed: u64) -> u32 {
    let mut alice = AliceTwoPhase::new(*ps);
    let mut bob = BobMirror::new(RngSeed::new(seed, 2));
    let out = play_game(g, ps.k, &mut alice, &mut bob, Player::Alice).unwrap();
    let r = alice.report();
    let at = r.phase_switch_move.expect("phase switch happened") as usize;
    assert_eq!(out.transcript[at].player, Player::Alice);
    let mut colors = vec![0u32; g.n()];
    for rec in &out.transcript[..at] {
        colors[rec.vertex as usize] = rec.color;
    }
    let n = g.n() as f64;
    let d = ps.d;
    let gamma = 16.0 * d.ln().powi(2) / (ps.alpha * d.powf(1.0 - 1.0 / ps.alpha));
    let beta = ps.alpha * d.powf(1.0 - 1.0 / ps.alpha) / d.ln();
    let uncolored: Vec<u32> = (0..g.n() as u32).filter(|&v| colors[v as usize] == 0).collect();
    assert!(uncolored.len() as f64 <= 2.0 * gamma * n);
    let min_a = uncolored.iter().map(|&v| brute_available(g, &colors, ps.k, v).len()).min().unwrap();
    assert!(min_a as f64 >= beta / 2.0, "min a = {min_a}, beta / 2 = {}", beta / 2.0);
    // One move earlier on Alice's turn the conditions did not both hold yet.
    if at >= 2 {
        let mut prev = colors.clone();
        for rec in &out.transcript[at - 2..at] {
            prev[rec.vertex as usize] = 0;
        }
        let before = prev.iter().filter(|&&c| c == 0).count() as f64;
        let min_before = (0..g.n() as u32)
            .filter(|&v| prev[v as usize] == 0)
            .map(|v| brute_available(g, &prev, ps.k, v).len())
            .min()
            .unwrap();
        assert!(before > 2.0 * gamma * n || (min_before as f64) < beta / 2.0);
    }
    at as u32
}

#[test]
fn switch_state_recomputed_sparse() {
    let (n, d) = (5000, 20.0);
    let ps = ParameterSet::derive(n, d, 13.0).unwrap();
    for s in 0..2 {
        let g = gen_gnp(n, d / n as f64, RngSeed::new(s, 0)).unwrap();
        check_switch_state(&g, &ps, s);
    }
}

#[test]
fn switch_state_recomputed_late() {
    // d = 100: 2 gamma n < n, so greedy play comes first.
    let (n, d) = (1500, 100.0);
    let ps = ParameterSet::derive(n, d, 13.0).unwrap();
    assert!(2.0 * ps.gamma < 1.0);
    let g = gen_gnp(n, d / n as f64, RngSeed::new(4, 0)).unwrap();
    let at = check_switch_state(&g, &ps, 4);
    assert!(at > 0);
}

#[test]
fn forest_single_edge() {
    let g = Graph::path(2);
    let edges: Vec<_> = g.edges().collect();
    let st = GameState::new(&g, 2, Player::Alice).unwrap();
    let mut f = ForestEndgame::new(2, &[0, 1], &edges, &st);
    let m = f.choose(&st).unwrap();
    assert!(m.vertex <= 1);
    let mut st2 = st.clone();
    st2.apply_move(m).unwrap();
    st2.apply_move(MoveChoice::new(1 - m.vertex, 2)).unwrap();
    let _ = f.choose(&st2);
    assert_eq!(f.report().max_colored_f_neighbors, Some(0));
}

#[test]
fn forest_four_cycle_opens_on_cycle() {
    // A 4-cycle 3-4-5-6 with a tail 0-1-2-3 and a pendant 7 at 5.
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 3), (5, 7)];
    let g = Graph::from_edges(8, &edges).unwrap();
    let st = GameState::new(&g, 5, Player::Alice).unwrap();
    let mut f = ForestEndgame::new(8, &(0..8).collect::<Vec<_>>(), &edges, &st);
    assert_eq!(f.limit(), 4);
    let m = f.choose(&st).unwrap();
    assert!([3, 4, 5, 6].contains(&m.vertex), "{m:?}");
}

/// Random forest on `n` vertices with `components` recursive trees, plus,
/// if `cycle`, one edge from a vertex to an ancestor at distance at least 2.
/// Returns whether the cycle was added.
fn forest_like(n: usize, cycle: bool, components: usize, seed: u64) -> (Graph, bool) {
    let mut rng = RngSeed::new(seed, 7).rng();
    let mut edges = Vec::new();
    let mut parent = vec![u32::MAX; n];
    for v in 1..n as u32 {
        if (v as usize) < components {
            continue;
        }
        let p = rng.gen_range(0..v);
        parent[v as usize] = p;
        edges.push((p, v));
    }
    let mut added = false;
    if cycle {
        let deep: Vec<u32> = (0..n as u32)
            .filter(|&v| parent[v as usize] != u32::MAX && parent[parent[v as usize] as usize] != u32::MAX)
            .collect();
        if let Some(&v) = deep.choose(&mut rng) {
            let mut ancestors = Vec::new();
            let mut a = parent[parent[v as usize] as usize];
            while a != u32::MAX {
                ancestors.push(a);
                a = parent[a as usize];
            }
            let a = *ancestors.choose(&mut rng).unwrap();
            edges.push((a.min(v), a.max(v)));
            added = true;
        }
    }
    (Graph::from_edges(n, &edges).unwrap(), added)
}

/// Colored neighbors of each vertex at the moment Alice colors it, recounted
/// from the transcript.
fn alice_peak(g: &Graph, out: &colorgame_core::Outcome) -> usize {
    let mut colored = vec![false; g.n()];
    let mut peak = 0;
    for r in &out.transcript {
        if r.player == Player::Alice {
            peak = peak.max(g.neighbors(r.vertex).iter().filter(|&&u| colored[u as usize]).count());
        }
        colored[r.vertex as usize] = true;
    }
    peak
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn forest_endgame_invariant(n in 2usize..60, cycle in any::<bool>(), comps in 1usize..4, seed in any::<u64>(), mirror in any::<bool>()) {
        let (g, cycle) = forest_like(n, cycle, comps, seed);
        let edges: Vec<_> = g.edges().collect();
        let k = 6;
        let st = GameState::new(&g, k, Player::Alice).unwrap();
        let mut alice = ForestEndgame::new(n, &(0..n as u32).collect::<Vec<_>>(), &edges, &st);
        let limit = alice.limit() as usize;
        prop_assert_eq!(limit, if cycle { 4 } else { 3 });
        let mut bob: Box<dyn Strategy> = if mirror {
            Box::new(BobMirror::new(RngSeed::new(seed, 1)))
        } else {
            Box::new(RandomPlayer::new(RngSeed::new(seed, 1)))
        };
        let out = play_game(&g, k, &mut alice, bob.as_mut(), Player::Alice).unwrap();
        prop_assert!(alice_peak(&g, &out) <= limit, "peak {} > {}", alice_peak(&g, &out), limit);
        let r = alice.report();
        prop_assert_eq!(r.invariant_violations, 0);
        prop_assert_eq!(r.max_colored_f_neighbors.unwrap() as usize, alice_peak(&g, &out));
        if cycle {
            let first = out.transcript[0].vertex;
            let cyc: Vec<u32> = (0..n as u32).filter(|&v| on_cycle(&g, v)).collect();
            prop_assert!(cyc.contains(&first), "first move {} not on cycle {:?}", first, cyc);
        }
    }

    #[test]
    fn greedy_is_argmin(g in arb_graph(1, 14), k in 1u32..6, moves in 0usize..14, seed in any::<u64>()) {
        let st = random_state(&g, k, moves, seed);
        let m = greedy_choice(&st);
        let live: Vec<(usize, u32)> = st
            .uncolored()
            .map(|v| (brute_available(&g, st.colors(), k, v).len(), v))
            .filter(|&(a, _)| a > 0)
            .collect();
        match live.iter().min() {
            None => prop_assert!(m.is_none()),
            Some(&(_, v)) => {
                let c = brute_available(&g, st.colors(), k, v)[0];
                prop_assert_eq!(m, Some(MoveChoice::new(v, c)));
            }
        }
    }

    #[test]
    fn every_strategy_moves_legally(g in arb_graph(1, 10), k in 1u32..5, moves in 0usize..10, seed in any::<u64>()) {
        let st = random_state(&g, k, moves, seed);
        let any_legal = st.uncolored().any(|v| !brute_available(&g, st.colors(), k, v).is_empty());
        let edges: Vec<_> = g.edges().collect();
        let domain: Vec<u32> = (0..g.n() as u32).collect();
        let ps = ParameterSet::derive(g.n(), 3.0, 13.0).unwrap();
        let mut players: Vec<Box<dyn Strategy>> = vec![
            Box::new(AliceGreedy),
            Box::new(RandomPlayer::new(RngSeed::new(seed, 1))),
            Box::new(BobMirror::new(RngSeed::new(seed, 2))),
            Box::new(AliceTwoPhase::new(ps)),
            Box::new(OptimalPlayer::new(&g, k, Player::Alice).unwrap()),
            Box::new(ForestEndgame::new(g.n(), &domain, &edges, &GameState::new(&g, k, Player::Alice).unwrap())),
        ];
        for p in players.iter_mut() {
            let m = p.choose(&st);
            prop_assert_eq!(legal(&st, m), any_legal, "{} chose {:?}", p.name(), m);
        }
    }

    #[test]
    fn mirror_repeats_color(g in arb_graph(2, 14), k in 1u32..5, moves in 0usize..12, seed in any::<u64>()) {
        let mut st = random_state(&g, k, moves, seed);
        if st.to_move() == Player::Bob {
            if let Some(m) = greedy_choice(&st) {
                st.apply_move(m).unwrap();
            }
        }
        prop_assume!(st.to_move() == Player::Alice && st.detect_dead_vertex().is_none());
        let Some(a) = greedy_choice(&st) else { return Ok(()) };
        st.apply_move(a).unwrap();
        let mut bob = BobMirror::new(RngSeed::new(seed, 3));
        let m = bob.choose(&st);
        let u_i: Vec<u32> = st
            .uncolored()
            .filter(|&v| g.neighbors(v).iter().all(|&u| st.color_of(u) != Some(a.color)))
            .collect();
        if u_i.is_empty() {
            prop_assert!(m.is_none() || bob.report().mirror_fallbacks == 1);
        } else {
            let m = m.unwrap();
            prop_assert_eq!(m.color, a.color);
            prop_assert!(u_i.contains(&m.vertex));
            prop_assert_eq!(bob.report().mirror_fallbacks, 0);
        }
    }

    #[test]
    fn cubic_bob_moves_legally(half in 10usize..60, seed in any::<u64>(), greedy in any::<bool>()) {
        let cm = gen_cubic_cycle_matching(2 * half, RngSeed::new(seed, 0)).unwrap();
        let mut bob = BobCubic::new(cm.clone(), 0.5, RngSeed::new(seed, 1));
        let mut alice: Box<dyn Strategy> =
            if greedy { Box::new(AliceGreedy) } else { Box::new(RandomPlayer::new(RngSeed::new(seed, 2))) };
        let out = play_game(&cm.graph, 3, alice.as_mut(), &mut bob, Player::Alice).unwrap();
        prop_assert!(!matches!(out.reason, colorgame_core::Reason::IllegalMove(_)));
    }
}

fn on_cycle(g: &Graph, v: u32) -> bool {
    // v lies on a cycle iff some edge at v is not a bridge.
    g.neighbors(v).iter().any(|&u| {
        let rest: Vec<(u32, u32)> = g.edges().filter(|&e| e != (v.min(u), v.max(u))).collect();
        let h = Graph::from_edges(g.n(), &rest).unwrap();
        common::bfs(&h, v)[u as usize] != u32::MAX
    })
}

// Cubic fixture: a 10-cycle 0..=9, a third path 0-10-11-12-13-14-4, pendants
// 15..=22 on the cycle vertices other than 0 and 4, isolated 23..=29.
fn theta_fixture() -> (Graph, HSubgraph) {
    let mut edges: Vec<(u32, u32)> = (0..10).map(|i| (i, (i + 1) % 10)).collect();
    edges.extend([(0, 10), (10, 11), (11, 12), (12, 13), (13, 14), (4, 14)]);
    for (p, c) in (15..).zip([1, 2, 3, 5, 6, 7, 8, 9]) {
        edges.push((c, p));
    }
    let g = Graph::from_edges(30, &edges).unwrap();
    let h = HSubgraph {
        v: 0,
        w: 4,
        paths: [vec![0, 1, 2, 3, 4], vec![0, 9, 8, 7, 6, 5, 4], vec![0, 10, 11, 12, 13, 14, 4]],
        chords: None,
        segment_pair: None,
        source: HSource::LocalSearch,
    };
    (g, h)
}

fn pendant(c: u32) -> u32 {
    15 + [1, 2, 3, 5, 6, 7, 8, 9].iter().position(|&x| x == c).unwrap() as u32
}

/// Bob has a move after which some uncolored vertex has no color left.
fn bob_can_kill(g: &Graph, colors: &[u32]) -> bool {
    (0..g.n() as u32).filter(|&v| colors[v as usize] == 0).any(|v| {
        brute_available(g, colors, 3, v).into_iter().any(|c| {
            let mut next = colors.to_vec();
            next[v as usize] = c;
            brute_dead(g, &next, 3).is_some()
        })
    })
}

#[test]
fn double_threat_wins_against_every_reply() {
    let (g, h) = theta_fixture();
    let mut st = GameState::new(&g, 3, Player::Alice).unwrap();
    let mut bob = BobCubic::with_h(h, RngSeed::new(1, 0));
    // Alice opens far away; after each forcing move she answers on the
    // threatened vertex.
    let script = [
        (MoveChoice::new(23, 1), MoveChoice::new(0, 1)),
        (MoveChoice::new(24, 1), MoveChoice::new(2, 2)),
        (MoveChoice::new(1, 3), MoveChoice::new(4, 1)),
        (MoveChoice::new(3, 3), MoveChoice::new(6, 2)),
        (MoveChoice::new(5, 3), MoveChoice::new(8, 3)),
    ];
    for (a, b) in script {
        st.apply_move(a).unwrap();
        assert_eq!(st.detect_dead_vertex(), None);
        assert_eq!(bob.choose(&st), Some(b));
        st.apply_move(b).unwrap();
        assert_eq!(st.detect_dead_vertex(), None);
    }
    assert_eq!(bob.plan().unwrap().chain, vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 0]);
    // Two threats at once: 7 and 9 are down to one color each.
    assert_eq!(brute_available(&g, st.colors(), 3, 7), vec![1]);
    assert_eq!(brute_available(&g, st.colors(), 3, 9), vec![2]);
    let replies: Vec<MoveChoice> = st
        .uncolored()
        .flat_map(|v| brute_available(&g, st.colors(), 3, v).into_iter().map(move |c| MoveChoice::new(v, c)))
        .collect();
    assert!(replies.len() > 20);
    for r in replies {
        let mut s = st.clone();
        s.apply_move(r).unwrap();
        if brute_dead(&g, s.colors(), 3).is_some() {
            continue;
        }
        assert!(bob_can_kill(&g, s.colors()), "reply {r:?} survives");
        let mut b = bob.clone();
        let m = b.choose(&s).unwrap();
        s.apply_move(m).unwrap();
        assert!(brute_dead(&g, s.colors(), 3).is_some(), "reply {r:?}, Bob {m:?}");
    }
}

#[test]
fn reply_at_w_switches_to_single_path() {
    let (g, h) = theta_fixture();
    let mut st = GameState::new(&g, 3, Player::Alice).unwrap();
    let mut bob = BobCubic::with_h(h, RngSeed::new(1, 0));
    st.apply_move(MoveChoice::new(23, 1)).unwrap();
    let m = bob.choose(&st).unwrap();
    st.apply_move(m).unwrap();
    st.apply_move(MoveChoice::new(4, 2)).unwrap();
    let m = bob.choose(&st).unwrap();
    assert_eq!(bob.plan().unwrap().chain, vec![0, 1, 2, 3, 4]);
    // The last forcing move differs from both ends: 1 and 3 are each left
    // with a single color.
    assert_eq!(m, MoveChoice::new(2, 3));
    st.apply_move(m).unwrap();
    assert_eq!(brute_available(&g, st.colors(), 3, 1).len(), 1);
    assert_eq!(brute_available(&g, st.colors(), 3, 3).len(), 1);
    assert!(!bob_can_kill(&g, st.colors()) || killing_move(&st).is_some());
}

#[test]
fn far_reply_keeps_a_cycle_avoiding_it() {
    let (g, h) = theta_fixture();
    let mut st = GameState::new(&g, 3, Player::Alice).unwrap();
    let mut bob = BobCubic::with_h(h.clone(), RngSeed::new(1, 0));
    st.apply_move(MoveChoice::new(23, 1)).unwrap();
    let m = bob.choose(&st).unwrap();
    st.apply_move(m).unwrap();
    st.apply_move(MoveChoice::new(25, 1)).unwrap();
    bob.choose(&st).unwrap();
    assert_eq!(bob.plan().unwrap().chain, vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 0]);

    // A reply next to the middle of the first path moves the plan to the
    // other two paths.
    let mut st = GameState::new(&g, 3, Player::Alice).unwrap();
    let mut bob = BobCubic::with_h(h, RngSeed::new(1, 0));
    st.apply_move(MoveChoice::new(23, 1)).unwrap();
    let m = bob.choose(&st).unwrap();
    st.apply_move(m).unwrap();
    st.apply_move(MoveChoice::new(pendant(2), 1)).unwrap();
    bob.choose(&st).unwrap();
    let chain = &bob.plan().unwrap().chain;
    assert_eq!(chain, &vec![0, 9, 8, 7, 6, 5, 4, 14, 13, 12, 11, 10, 0]);
}
