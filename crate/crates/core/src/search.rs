//! Depth-first generation of arrangements on one vertex set (a bag) under
//! the constraints shared by the oracle and the DP:
//!
//! * every required edge is present (a vertex may only close once all its
//!   required neighbours have opened),
//! * optionally, no edge from a forbidden mask appears,
//! * optionally, the endpoints of an interface subset follow a fixed key.
//!
//! Results are deduplicated by what later stages can observe: the edge mask
//! and the projection onto a forward interface, or the projection alone when
//! the caller only needs to avoid the forbidden edges.

use std::collections::HashSet;

use crate::bits::star_mask;

/// Token of the endpoint of dense vertex `v` inside interface `set`.
#[inline]
pub(crate) fn interface_token(set: u32, v: usize, right: bool) -> u8 {
    let idx = (set & ((1u32 << v) - 1)).count_ones() as u8;
    2 * idx + right as u8
}

/// Projection of an arrangement onto `set`, re-indexed within `set`.
pub(crate) fn project(tokens: &[u8], set: u32) -> Vec<u8> {
    tokens
        .iter()
        .filter(|&&t| set & (1 << (t >> 1)) != 0)
        .map(|&t| interface_token(set, (t >> 1) as usize, t & 1 == 1))
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Bag<'a> {
    /// Required neighbours of each dense vertex within the bag.
    pub nbrs: &'a [u32],
    /// Interface whose endpoint order is fixed by the key.
    pub back: u32,
    /// Interface whose projection distinguishes results.
    pub fwd: u32,
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Mode {
    /// Keep one arrangement per `(edges, forward projection)`.
    Distinct,
    /// Keep one arrangement per forward projection among those avoiding the
    /// mask; stop after `limit` results.
    Avoid { forbidden: u128, limit: usize },
}

#[derive(Debug, Clone)]
pub(crate) struct Found {
    pub edges: u128,
    pub tokens: Vec<u8>,
    pub fwd: Vec<u8>,
}

/// Lexicographically ordered results for the bag under `key` and `mode`.
pub(crate) fn arrangements(bag: Bag<'_>, key: &[u8], mode: Mode) -> Vec<Found> {
    let mut s = Gen {
        bag,
        key,
        mode,
        m: bag.nbrs.len(),
        visited: HashSet::new(),
        seen: HashSet::new(),
        prefix: Vec::with_capacity(2 * bag.nbrs.len()),
        fwd: Vec::new(),
        out: Vec::new(),
    };
    s.go(0, 0, 0, 0);
    s.out
}

struct Gen<'a> {
    bag: Bag<'a>,
    key: &'a [u8],
    mode: Mode,
    m: usize,
    visited: HashSet<(u32, u32, u128, Vec<u8>)>,
    seen: HashSet<(u128, Vec<u8>)>,
    prefix: Vec<u8>,
    fwd: Vec<u8>,
    out: Vec<Found>,
}

impl Gen<'_> {
    fn done(&self) -> bool {
        matches!(self.mode, Mode::Avoid { limit, .. } if self.out.len() >= limit)
    }

    fn go(&mut self, started: u32, closed: u32, edges: u128, kpos: usize) {
        if self.done() {
            return;
        }
        // In avoid mode the edges do not influence what can follow.
        let state_edges = match self.mode {
            Mode::Distinct => edges,
            Mode::Avoid { .. } => 0,
        };
        if !self
            .visited
            .insert((started, closed, state_edges, self.fwd.clone()))
        {
            return;
        }
        if self.prefix.len() == 2 * self.m {
            if self.seen.insert((state_edges, self.fwd.clone())) {
                self.out.push(Found {
                    edges,
                    tokens: self.prefix.clone(),
                    fwd: self.fwd.clone(),
                });
            }
            return;
        }
        let open = started & !closed;
        for v in 0..self.m {
            let bit = 1u32 << v;
            let right = if started & bit == 0 {
                false
            } else if open & bit != 0 && self.bag.nbrs[v] & !started == 0 {
                true
            } else {
                continue;
            };
            let mut next_kpos = kpos;
            if self.bag.back & bit != 0 {
                if self.key.get(kpos) != Some(&interface_token(self.bag.back, v, right)) {
                    continue;
                }
                next_kpos += 1;
            }
            let (s2, c2, e2) = if right {
                (started, closed | bit, edges)
            } else {
                let added = star_mask(v, open);
                if let Mode::Avoid { forbidden, .. } = self.mode {
                    if added & forbidden != 0 {
                        continue;
                    }
                }
                (started | bit, closed, edges | added)
            };
            let in_fwd = self.bag.fwd & bit != 0;
            self.prefix.push(2 * v as u8 + right as u8);
            if in_fwd {
                self.fwd.push(interface_token(self.bag.fwd, v, right));
            }
            self.go(s2, c2, e2, next_kpos);
            if in_fwd {
                self.fwd.pop();
            }
            self.prefix.pop();
            if self.done() {
                return;
            }
        }
    }
}
