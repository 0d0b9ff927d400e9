// Dinic max-flow on integer capacities.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

pub(crate) struct FlowNet {
    head: Vec<u32>,
    to: Vec<u32>,
    cap: Vec<i64>,
    next: Vec<u32>,
    level: Vec<i32>,
    iter: Vec<u32>,
}

const NIL: u32 = u32::MAX;

impl FlowNet {
    pub fn new(nodes: usize) -> Self {
        FlowNet {
            head: vec![NIL; nodes],
            to: Vec::new(),
            cap: Vec::new(),
            next: Vec::new(),
            level: vec![0; nodes],
            iter: vec![0; nodes],
        }
    }

    /// Arc `a -> b` with capacity `c` and reverse capacity `rc`.
    pub fn add(&mut self, a: usize, b: usize, c: i64, rc: i64) {
        for (x, y, w) in [(a, b, c), (b, a, rc)] {
            self.to.push(y as u32);
            self.cap.push(w);
            self.next.push(self.head[x]);
            self.head[x] = (self.to.len() - 1) as u32;
        }
    }

    fn bfs(&mut self, s: usize) {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            let mut e = self.head[x];
            while e != NIL {
                let y = self.to[e as usize] as usize;
                if self.cap[e as usize] > 0 && self.level[y] < 0 {
                    self.level[y] = self.level[x] + 1;
                    q.push_back(y);
                }
                e = self.next[e as usize];
            }
        }
    }

    fn dfs(&mut self, x: usize, t: usize, f: i64) -> i64 {
        if x == t {
            return f;
        }
        while self.iter[x] != NIL {
            let e = self.iter[x] as usize;
            let y = self.to[e] as usize;
            if self.cap[e] > 0 && self.level[y] == self.level[x] + 1 {
                let d = self.dfs(y, t, f.min(self.cap[e]));
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            self.iter[x] = self.next[e];
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        loop {
            self.bfs(s);
            if self.level[t] < 0 {
                return flow;
            }
            self.iter.copy_from_slice(&self.head);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
    }

    /// Nodes reachable from `s` in the residual network: the smallest
    /// source side among minimum cuts.
    pub fn source_side(&mut self, s: usize) -> Vec<bool> {
        self.bfs(s);
        self.level.iter().map(|&l| l >= 0).collect()
    }
}
