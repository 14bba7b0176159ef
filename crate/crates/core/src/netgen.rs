//! Barabási–Albert growth, reduced to the degree sequence.
//!
//! Growth starts from the complete graph on `m + 1` nodes. Each later node
//! attaches to `m` distinct existing nodes drawn with probability
//! proportional to degree, so the result is a simple graph with minimum
//! degree `m` and exactly `m(m+1)/2 + m(N - m - 1)` edges.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, and uniform
//! indices are drawn as `u64`, so a seed yields the same degree sequence on
//! every platform.

use std::collections::BTreeMap;
use std::io::{BufWriter, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub type NodeId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GrowthParams {
    n_nodes: u64,
    m: u64,
    seed: u64,
}

impl GrowthParams {
    pub fn new(n_nodes: u64, m: u64, seed: u64) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidParams("m must be >= 1".into()));
        }
        if n_nodes < m + 2 {
            return Err(Error::InvalidParams(format!(
                "n_nodes = {n_nodes} must be at least m + 2 = {}",
                m + 2
            )));
        }
        if n_nodes > NodeId::MAX as u64 {
            return Err(Error::InvalidParams(format!(
                "n_nodes = {n_nodes} exceeds {}",
                NodeId::MAX
            )));
        }
        Ok(Self { n_nodes, m, seed })
    }

    pub fn n_nodes(&self) -> u64 {
        self.n_nodes
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn edge_count(&self) -> u64 {
        self.m * (self.m + 1) / 2 + self.m * (self.n_nodes - self.m - 1)
    }
}

/// Final degrees of one realization, indexed by creation order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSequence {
    degrees: Vec<u64>,
    params: GrowthParams,
}

impl DegreeSequence {
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn params(&self) -> &GrowthParams {
        &self.params
    }

    pub fn total_degree(&self) -> u64 {
        self.degrees.iter().sum()
    }

    pub fn mean_degree(&self) -> f64 {
        self.total_degree() as f64 / self.degrees.len() as f64
    }

    pub fn min_degree(&self) -> u64 {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u64 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }
}

/// Degree-proportional sampler backed by a list that holds every node once per
/// unit of degree.
#[derive(Debug, Clone, Default)]
pub struct AttachmentSampler {
    slots: Vec<NodeId>,
    // round in which a node was last picked; enforces distinct targets
    picked_in: Vec<u64>,
    round: u64,
}

impl AttachmentSampler {
    pub fn with_capacity(nodes: usize, slots: usize) -> Self {
        Self {
            slots: Vec::with_capacity(slots),
            picked_in: Vec::with_capacity(nodes),
            round: 0,
        }
    }

    /// Sampler over nodes `0..degrees.len()` with the given degrees.
    pub fn from_degrees(degrees: &[u64]) -> Self {
        let mut s = Self::with_capacity(degrees.len(), degrees.iter().sum::<u64>() as usize);
        for (node, &d) in degrees.iter().enumerate() {
            s.add_node();
            for _ in 0..d {
                s.slots.push(node as NodeId);
            }
        }
        s
    }

    pub fn node_count(&self) -> usize {
        self.picked_in.len()
    }

    fn add_node(&mut self) -> NodeId {
        self.picked_in.push(0);
        (self.picked_in.len() - 1) as NodeId
    }

    fn add_edge(&mut self, u: NodeId, v: NodeId) {
        self.slots.push(u);
        self.slots.push(v);
    }

    /// Draws one node with probability proportional to its degree.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> NodeId {
        let idx = rng.random_range(0..self.slots.len() as u64);
        self.slots[idx as usize]
    }

    /// Draws `m` distinct nodes into `out`, rejecting repeats.
    ///
    /// Panics if the sampler holds fewer than `m` nodes. Loops forever if fewer
    /// than `m` of them have positive degree.
    pub fn draw_distinct<R: Rng + ?Sized>(&mut self, rng: &mut R, m: usize, out: &mut Vec<NodeId>) {
        assert!(
            m <= self.node_count(),
            "cannot draw {m} distinct nodes from {}",
            self.node_count()
        );
        self.round += 1;
        out.clear();
        while out.len() < m {
            let t = self.draw(rng);
            let mark = &mut self.picked_in[t as usize];
            if *mark != self.round {
                *mark = self.round;
                out.push(t);
            }
        }
    }
}

/// Grows one network and returns its degree sequence.
pub fn generate(params: GrowthParams) -> Result<DegreeSequence> {
    grow(params, None)
}

/// As [`generate`], also returning the edge list in insertion order.
pub fn generate_with_edges(params: GrowthParams) -> Result<(DegreeSequence, Vec<(NodeId, NodeId)>)> {
    let mut edges = Vec::with_capacity(params.edge_count() as usize);
    let seq = grow(params, Some(&mut edges))?;
    Ok((seq, edges))
}

fn grow(params: GrowthParams, mut edges: Option<&mut Vec<(NodeId, NodeId)>>) -> Result<DegreeSequence> {
    let GrowthParams { n_nodes, m, seed } = GrowthParams::new(params.n_nodes, params.m, params.seed)?;
    let n = n_nodes as usize;
    let m_us = m as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degrees = vec![0u64; n];
    let mut sampler = AttachmentSampler::with_capacity(n, 2 * params.edge_count() as usize);

    for _ in 0..=m_us {
        sampler.add_node();
    }
    for u in 0..=m_us {
        for v in u + 1..=m_us {
            sampler.add_edge(u as NodeId, v as NodeId);
            if let Some(e) = edges.as_deref_mut() {
                e.push((u as NodeId, v as NodeId));
            }
        }
    }
    degrees[..=m_us].fill(m);

    let mut targets = Vec::with_capacity(m_us);
    for _ in m_us + 1..n {
        sampler.draw_distinct(&mut rng, m_us, &mut targets);
        let v = sampler.add_node();
        for &t in &targets {
            sampler.add_edge(t, v);
            degrees[t as usize] += 1;
            if let Some(e) = edges.as_deref_mut() {
                e.push((v, t));
            }
        }
        degrees[v as usize] = m;
    }

    Ok(DegreeSequence { degrees, params })
}

/// Count of nodes per degree.
pub fn degree_histogram(seq: &DegreeSequence) -> BTreeMap<u64, u64> {
    histogram(seq.degrees())
}

pub fn histogram(values: &[u64]) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    for &k in values {
        *out.entry(k).or_insert(0) += 1;
    }
    out
}

/// Writes one `u v` pair per line.
pub fn write_edge_list(path: &Path, edges: &[(NodeId, NodeId)]) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    for (u, v) in edges {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(GrowthParams::new(3, 1, 0).is_ok());
        assert!(matches!(GrowthParams::new(2, 1, 0), Err(Error::InvalidParams(_))));
        assert!(matches!(GrowthParams::new(100, 0, 0), Err(Error::InvalidParams(_))));
        assert!(matches!(GrowthParams::new(6, 5, 0), Err(Error::InvalidParams(_))));
        assert!(GrowthParams::new(7, 5, 0).is_ok());
    }

    #[test]
    fn tiny_network_edge_arithmetic() {
        for seed in 0..20 {
            let seq = generate(GrowthParams::new(5, 1, seed).unwrap()).unwrap();
            assert_eq!(seq.total_degree(), 8);
            assert_eq!(seq.min_degree(), 1);
            assert_eq!(seq.degrees().len(), 5);
        }
    }

    #[test]
    fn edges_are_simple_and_consistent() {
        let params = GrowthParams::new(2000, 4, 9).unwrap();
        let (seq, edges) = generate_with_edges(params).unwrap();
        assert_eq!(edges.len() as u64, params.edge_count());
        let mut seen = std::collections::HashSet::new();
        let mut deg = vec![0u64; 2000];
        for &(u, v) in &edges {
            assert_ne!(u, v);
            assert!(seen.insert((u.min(v), u.max(v))), "multi-edge {u} {v}");
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        assert_eq!(deg, seq.degrees());
        assert_eq!(generate(params).unwrap(), seq);
        // new nodes only link backwards
        for &(u, v) in &edges[10..] {
            assert!(v < u);
        }
    }

    #[test]
    fn histogram_counts() {
        let h = histogram(&[1, 1, 2, 4]);
        assert_eq!(h, BTreeMap::from([(1, 2), (2, 1), (4, 1)]));
        assert!(histogram(&[]).is_empty());
    }

    #[test]
    fn histogram_has_no_key_below_m() {
        for seed in 0..10 {
            let seq = generate(GrowthParams::new(100_000, 5, seed).unwrap()).unwrap();
            let h = degree_histogram(&seq);
            assert!(*h.keys().next().unwrap() >= 5);
            assert_eq!(h.values().sum::<u64>(), 100_000);
        }
    }

    #[test]
    fn edge_list_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("edges.txt");
        let (_, edges) = generate_with_edges(GrowthParams::new(6, 1, 3).unwrap()).unwrap();
        write_edge_list(&path, &edges).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "0 1");
        assert!(lines.iter().all(|l| l.split(' ').count() == 2));
    }
}
