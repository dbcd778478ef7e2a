//! The coloring game on a triangulated 2-sphere.
//!
//! Start by coloring one or two vertices red. A move picks an edge with
//! both endpoints uncolored lying in a face whose third vertex is red,
//! colors the edge and its endpoints red and the face green. The best
//! achievable green count bounds the Euler numbers that admit classical
//! triangulations over the sphere.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::complex::{enumerate_spheres, is_sphere, SimplicialComplex};
use crate::error::{Error, Result};

/// Default vertex budget for exhaustive search.
pub const DEFAULT_BUDGET: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Move {
    pub edge: [usize; 2],
    pub face: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strategy {
    pub initial: Vec<usize>,
    pub moves: Vec<Move>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameState {
    pub red_vertices: u64,
    pub red_edges: Vec<[usize; 2]>,
    pub green_faces: Vec<[usize; 3]>,
    pub move_log: Vec<Move>,
}

impl GameState {
    pub fn is_red(&self, v: usize) -> bool {
        self.red_vertices >> v & 1 == 1
    }

    pub fn red_count(&self) -> usize {
        self.red_vertices.count_ones() as usize
    }
}

/// A sphere prepared for play: edges with the faces containing them.
#[derive(Debug, Clone)]
pub struct Game {
    vertices: usize,
    faces: usize,
    /// Each edge with its two (third vertex, face) pairs, in lexicographic order.
    edges: Vec<([usize; 2], Vec<(usize, [usize; 3])>)>,
}

impl Game {
    pub fn new(base: &SimplicialComplex) -> Result<Self> {
        if !is_sphere(base) {
            return Err(Error::NotASphere("fails the sphere checks".into()));
        }
        if base.vertex_count() > 64 {
            return Err(Error::NotASphere("more than 64 vertices".into()));
        }
        let edges = base
            .simplices(1)
            .iter()
            .map(|e| {
                let thirds = base
                    .cofacets(e)
                    .into_iter()
                    .map(|t| {
                        let third = *t.iter().find(|v| !e.contains(v)).expect("triangle");
                        (third, [t[0], t[1], t[2]])
                    })
                    .collect();
                ([e[0], e[1]], thirds)
            })
            .collect();
        Ok(Self {
            vertices: base.vertex_count(),
            faces: base.simplices(2).len(),
            edges,
        })
    }

    pub fn faces(&self) -> usize {
        self.faces
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn start(&self, initial: &[usize]) -> Result<GameState> {
        if initial.is_empty() || initial.len() > 2 {
            return Err(Error::NotReplayable("start with one or two vertices".into()));
        }
        let mut red = 0u64;
        for &v in initial {
            if v >= self.vertices || red >> v & 1 == 1 {
                return Err(Error::NotReplayable(format!("bad initial vertex {v}")));
            }
            red |= 1 << v;
        }
        Ok(GameState {
            red_vertices: red,
            red_edges: Vec::new(),
            green_faces: Vec::new(),
            move_log: Vec::new(),
        })
    }

    fn moves_from(&self, red: u64) -> impl Iterator<Item = Move> + '_ {
        self.edges
            .iter()
            .filter(move |(e, _)| red >> e[0] & 1 == 0 && red >> e[1] & 1 == 0)
            .flat_map(move |(e, thirds)| {
                thirds
                    .iter()
                    .filter(move |(x, _)| red >> x & 1 == 1)
                    .map(move |&(_, face)| Move { edge: *e, face })
            })
    }

    /// Edges with both endpoints uncolored lying in a face with a red third vertex.
    pub fn legal_moves(&self, state: &GameState) -> Vec<Move> {
        self.moves_from(state.red_vertices).collect()
    }

    pub fn apply(&self, state: &mut GameState, m: Move) -> Result<()> {
        if !self.moves_from(state.red_vertices).any(|x| x == m) {
            return Err(Error::NotReplayable(format!(
                "move {:?} via {:?} is illegal",
                m.edge, m.face
            )));
        }
        state.red_vertices |= 1 << m.edge[0] | 1 << m.edge[1];
        state.red_edges.push(m.edge);
        state.green_faces.push(m.face);
        state.move_log.push(m);
        Ok(())
    }

    pub fn replay(&self, strategy: &Strategy) -> Result<GameState> {
        let mut state = self.start(&strategy.initial)?;
        for &m in &strategy.moves {
            self.apply(&mut state, m)?;
        }
        Ok(state)
    }

    /// `4 * green >= f`.
    pub fn is_winning(&self, green: usize) -> bool {
        4 * green >= self.faces
    }

    /// Best green count reachable from `red`, memoized by red-vertex set.
    fn best(&self, red: u64, memo: &mut HashMap<u64, usize>) -> usize {
        if let Some(&b) = memo.get(&red) {
            return b;
        }
        let ceiling = (self.vertices - red.count_ones() as usize) / 2;
        let mut best = 0;
        let moves: Vec<Move> = self.moves_from(red).collect();
        for m in moves {
            if best == ceiling {
                break;
            }
            let next = red | 1 << m.edge[0] | 1 << m.edge[1];
            best = best.max(1 + self.best(next, memo));
        }
        memo.insert(red, best);
        best
    }

    fn exhaustive(&self) -> Solution {
        let mut memo = HashMap::new();
        let mut picks: Vec<Vec<usize>> = Vec::new();
        for a in 0..self.vertices {
            picks.push(vec![a]);
            for b in a + 1..self.vertices {
                picks.push(vec![a, b]);
            }
        }
        let mut winner: Option<(usize, Vec<usize>)> = None;
        for pick in picks {
            let red = pick.iter().fold(0u64, |m, &v| m | 1 << v);
            let g = self.best(red, &mut memo);
            if winner.as_ref().is_none_or(|(w, _)| g > *w) {
                winner = Some((g, pick));
            }
        }
        let (green, initial) = winner.expect("at least one vertex");
        let mut red = initial.iter().fold(0u64, |m, &v| m | 1 << v);
        let mut moves = Vec::new();
        let mut left = green;
        while left > 0 {
            let m = self
                .moves_from(red)
                .find(|m| {
                    let next = red | 1 << m.edge[0] | 1 << m.edge[1];
                    1 + self.best(next, &mut memo) == left
                })
                .expect("optimal continuation exists");
            red |= 1 << m.edge[0] | 1 << m.edge[1];
            moves.push(m);
            left -= 1;
        }
        Solution {
            green,
            strategy: Strategy { initial, moves },
            faces: self.faces,
            exhaustive: true,
        }
    }

    /// Greedy play from a vertex of maximum degree: first use edges of its
    /// link, then any legal move.
    fn heuristic(&self) -> Solution {
        let mut degree = vec![0usize; self.vertices];
        for (e, _) in &self.edges {
            degree[e[0]] += 1;
            degree[e[1]] += 1;
        }
        let root = (0..self.vertices)
            .max_by_key(|&v| (degree[v], std::cmp::Reverse(v)))
            .expect("nonempty");
        let mut red = 1u64 << root;
        let mut moves = Vec::new();
        loop {
            let all: Vec<Move> = self.moves_from(red).collect();
            let Some(m) = all.iter().find(|m| m.face.contains(&root)).or(all.first()).copied() else {
                break;
            };
            red |= 1 << m.edge[0] | 1 << m.edge[1];
            moves.push(m);
        }
        Solution {
            green: moves.len(),
            strategy: Strategy {
                initial: vec![root],
                moves,
            },
            faces: self.faces,
            exhaustive: false,
        }
    }
}

/// Best (or heuristic) green count with a strategy achieving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub green: usize,
    pub strategy: Strategy,
    pub faces: usize,
    pub exhaustive: bool,
}

impl Solution {
    pub fn winning(&self) -> bool {
        4 * self.green >= self.faces
    }
}

/// Exhaustive search refuses spheres with more than `budget` vertices.
pub fn solve(base: &SimplicialComplex, exhaustive: bool, budget: usize) -> Result<Solution> {
    let game = Game::new(base)?;
    if !exhaustive {
        return Ok(game.heuristic());
    }
    if game.vertices > budget {
        return Err(Error::SearchBudget {
            vertices: game.vertices,
            budget,
        });
    }
    Ok(game.exhaustive())
}

/// Certificate that no bundle with `|E| > euler_bound` over the sphere has
/// a classical triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub strategy: Strategy,
    pub green: usize,
    pub faces: usize,
    /// `f/2 - green`.
    pub euler_bound: i64,
}

pub fn euler_bound(base: &SimplicialComplex, strategy: &Strategy) -> Result<Certificate> {
    let game = Game::new(base)?;
    let state = game.replay(strategy)?;
    let green = state.green_faces.len();
    if !game.is_winning(green) {
        return Err(Error::NotWinning {
            green,
            faces: game.faces,
        });
    }
    Ok(Certificate {
        strategy: strategy.clone(),
        green,
        faces: game.faces,
        euler_bound: game.faces as i64 / 2 - green as i64,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaEntry {
    pub vertices: usize,
    pub triangles: usize,
    pub green: usize,
    pub winning: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub entries: Vec<LemmaEntry>,
    pub all_winning: bool,
}

/// Exhaustive play over every sphere with at most `max_vertices` vertices.
pub fn verify_lemma_win(max_vertices: usize) -> Result<LemmaReport> {
    let mut entries = Vec::new();
    for sphere in enumerate_spheres(max_vertices)? {
        let s = solve(&sphere, true, DEFAULT_BUDGET)?;
        entries.push(LemmaEntry {
            vertices: sphere.vertex_count(),
            triangles: s.faces,
            green: s.green,
            winning: s.winning(),
        });
    }
    let all_winning = entries.iter().all(|e| e.winning);
    Ok(LemmaReport { entries, all_winning })
}
