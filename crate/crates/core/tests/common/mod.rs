#![allow(dead_code)]

use hochschild::presentations::{basis_b, MonomialIdeal};
use hochschild::quiver::{Path, Quiver};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A connected acyclic quiver on 2 to `max_vertices` vertices with at most
/// `max_arrows` arrows. Vertex names are shuffled so insertion order is not
/// a topological order.
pub fn random_connected_acyclic(rng: &mut impl Rng, max_vertices: usize, max_arrows: usize) -> Quiver {
    let n = rng.gen_range(2.min(max_vertices)..=max_vertices);
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    let orient = |u: usize, v: usize| if rank[u] < rank[v] { (u, v) } else { (v, u) };
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push(orient(u, v));
    }
    let budget = max_arrows.max(n.saturating_sub(1));
    let extra = if n > 1 { rng.gen_range(0..=budget - (n - 1)) } else { 0 };
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.push(orient(u, v));
        }
    }
    edges.shuffle(rng);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let arrows: Vec<(String, String, String)> = edges
        .iter()
        .enumerate()
        .map(|(i, (s, t))| (format!("a{i}"), names[*s].clone(), names[*t].clone()))
        .collect();
    Quiver::new(names.clone(), arrows).unwrap()
}

/// A random connected tree (narrow, acyclic) on `n` vertices.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Quiver {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let arrows: Vec<(String, String, String)> = (1..n)
        .map(|v| {
            let u = rng.gen_range(0..v);
            let (s, t) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
            (format!("a{v}"), names[s].clone(), names[t].clone())
        })
        .collect();
    Quiver::new(names.clone(), arrows).unwrap()
}

pub fn crown() -> Quiver {
    Quiver::new(
        ["1", "2", "3", "4"],
        [("a", "1", "3"), ("b", "1", "4"), ("c", "2", "3"), ("d", "2", "4")],
    )
    .unwrap()
}

pub fn kronecker(n: usize) -> Quiver {
    let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    Quiver::new(["x", "y"], names.iter().map(|a| (a.as_str(), "x", "y"))).unwrap()
}

pub fn cycle(n: usize) -> Quiver {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, String)> = (0..n)
        .map(|i| (format!("c{i}"), names[i].clone(), names[(i + 1) % n].clone()))
        .collect();
    Quiver::new(names.clone(), arrows).unwrap()
}

/// a:1→2, b:2→3, c:2→3 with Z = {ab}.
pub fn effective_couple_fixture() -> (Quiver, MonomialIdeal) {
    let q = Quiver::new(
        ["1", "2", "3"],
        [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "3")],
    )
    .unwrap();
    let z = MonomialIdeal::new(&q, vec![q.path_by_names(&["a", "b"]).unwrap()]).unwrap();
    (q, z)
}

/// A random minimal set of generators drawn from the paths of length at
/// least 2 of an acyclic quiver.
pub fn random_minimal_ideal(rng: &mut impl Rng, quiver: &Quiver, max_generators: usize) -> MonomialIdeal {
    let mut long: Vec<Path> = quiver
        .enumerate_paths(None)
        .unwrap()
        .into_iter()
        .filter(|p| p.len() >= 2)
        .collect();
    long.shuffle(rng);
    let k = rng.gen_range(0..=max_generators.min(long.len()));
    let mut picked: Vec<Path> = long.into_iter().take(k).collect();
    picked.sort_by_key(Path::len);
    let mut kept: Vec<Path> = Vec::new();
    for p in picked {
        if !kept.iter().any(|g| p.contains(g)) {
            kept.push(p);
        }
    }
    MonomialIdeal::new(quiver, kept).unwrap()
}

pub struct Instance {
    pub quiver: Quiver,
    pub ideal: MonomialIdeal,
    pub dim: usize,
}

/// Draw connected acyclic monomial instances whose quotient has dimension
/// at most `max_dim`, deterministically from `seed`.
pub fn monomial_instances(seed: u64, count: usize, max_dim: usize) -> Vec<Instance> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let quiver = random_connected_acyclic(&mut r, 5, 8);
        if quiver.path_counts().unwrap().iter().flatten().sum::<u128>() > 400 {
            continue;
        }
        let ideal = random_minimal_ideal(&mut r, &quiver, 3);
        let dim = basis_b(&quiver, &ideal).unwrap().len();
        if dim <= max_dim {
            out.push(Instance { quiver, ideal, dim });
        }
    }
    out
}

/// Connected acyclic quivers with a truncation level `m ∈ {2, 3}` and
/// quotient dimension at most `max_dim`.
pub fn truncated_instances(seed: u64, count: usize, max_dim: usize) -> Vec<(Quiver, usize, usize)> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let quiver = random_connected_acyclic(&mut r, 5, 8);
        let m = r.gen_range(2..=3);
        let dim = quiver.enumerate_paths(Some(m - 1)).unwrap().len();
        if dim <= max_dim {
            out.push((quiver, m, dim));
        }
    }
    out
}
