//! Finite quivers and their paths.
//!
//! Vertices and arrows are addressed by their position in insertion order;
//! names are kept for reporting and for parsing. Paths compose in diagram
//! order: `compose(p, q)` is "p then q" and is defined when `p` ends where
//! `q` starts.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("empty vertex set")]
    EmptyVertexSet,
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("dangling endpoint: arrow `{arrow}` refers to unknown vertex `{vertex}`")]
    DanglingEndpoint { arrow: String, vertex: String },
    #[error("infinite path set: the quiver has an oriented cycle")]
    InfinitePathSet,
    #[error("narrowness requires acyclicity")]
    NarrownessRequiresAcyclic,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrows `{0}` and `{1}` are not composable")]
    NotComposable(String, String),
}

/// Name of a vertex, unique within its quiver.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub String);

impl VertexId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// A path: a source vertex and a composable sequence of arrow indices.
///
/// The empty sequence is the trivial path at `source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(vertex: usize) -> Self {
        Path {
            source: vertex,
            target: vertex,
            arrows: Vec::new(),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn first_arrow(&self) -> Option<usize> {
        self.arrows.first().copied()
    }

    pub fn last_arrow(&self) -> Option<usize> {
        self.arrows.last().copied()
    }

    pub fn is_parallel_to(&self, other: &Path) -> bool {
        self.source == other.source && self.target == other.target
    }

    /// True iff the non-trivial path `inner` occurs as a contiguous block of arrows.
    pub fn contains(&self, inner: &Path) -> bool {
        self.occurrences(inner).next().is_some()
    }

    /// Start positions of every occurrence of `inner` inside `self`.
    ///
    /// Trivial patterns have no occurrences.
    pub fn occurrences<'a>(&'a self, inner: &'a Path) -> impl Iterator<Item = usize> + 'a {
        let n = self.arrows.len();
        let k = inner.arrows.len();
        let upper = if k > 0 && k <= n { n - k + 1 } else { 0 };
        (0..upper).filter(move |&i| self.arrows[i..i + k] == inner.arrows[..])
    }

    /// Replace the arrow at `position` by the path `replacement`.
    ///
    /// `replacement` must be parallel to the arrow it replaces.
    pub fn substitute(&self, position: usize, replacement: &Path) -> Path {
        let mut arrows = Vec::with_capacity(self.arrows.len() + replacement.arrows.len());
        arrows.extend_from_slice(&self.arrows[..position]);
        arrows.extend_from_slice(&replacement.arrows);
        arrows.extend_from_slice(&self.arrows[position + 1..]);
        Path {
            source: self.source,
            target: self.target,
            arrows,
        }
    }

    pub(crate) fn shifted(&self, vertex_offset: usize, arrow_offset: usize) -> Path {
        Path {
            source: self.source + vertex_offset,
            target: self.target + vertex_offset,
            arrows: self.arrows.iter().map(|a| a + arrow_offset).collect(),
        }
    }

    pub(crate) fn from_parts(source: usize, target: usize, arrows: Vec<usize>) -> Path {
        Path {
            source,
            target,
            arrows,
        }
    }
}

/// Concatenation "p then q", or `None` for the zero product.
pub fn compose(p: &Path, q: &Path) -> Option<Path> {
    if p.target != q.source {
        return None;
    }
    let mut arrows = p.arrows.clone();
    arrows.extend_from_slice(&q.arrows);
    Some(Path {
        source: p.source,
        target: q.target,
        arrows,
    })
}

/// Two parallel paths (same source, same target).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParallelPair {
    pub left: Path,
    pub right: Path,
}

/// All pairs `(l, r)` with `l` parallel to `r`, in the order of `lefts` then `rights`.
pub fn parallel_pairs(lefts: &[Path], rights: &[Path]) -> Vec<ParallelPair> {
    lefts
        .iter()
        .flat_map(|l| {
            rights.iter().filter(|r| l.is_parallel_to(r)).map(|r| ParallelPair {
                left: l.clone(),
                right: r.clone(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<VertexId>,
    arrows: Vec<Arrow>,
}

/// A connected component together with its embedding into the parent quiver.
#[derive(Debug, Clone)]
pub struct Component {
    pub quiver: Quiver,
    /// `vertex_map[i]` is the parent index of component vertex `i`.
    pub vertex_map: Vec<usize>,
    /// `arrow_map[i]` is the parent index of component arrow `i`.
    pub arrow_map: Vec<usize>,
}

impl Component {
    /// Translate a parent path into this component, if it lies inside it.
    pub fn restrict_path(&self, path: &Path) -> Option<Path> {
        let source = self.vertex_map.iter().position(|&v| v == path.source)?;
        let target = self.vertex_map.iter().position(|&v| v == path.target)?;
        let arrows = path
            .arrows
            .iter()
            .map(|a| self.arrow_map.iter().position(|b| b == a))
            .collect::<Option<Vec<_>>>()?;
        Some(Path::from_parts(source, target, arrows))
    }
}

impl Quiver {
    /// Build and validate a quiver from vertex names and `(name, source, target)` triples.
    pub fn new<V, A, S>(vertices: V, arrows: A) -> Result<Self, QuiverError>
    where
        V: IntoIterator<Item = S>,
        A: IntoIterator<Item = (S, S, S)>,
        S: AsRef<str>,
    {
        let vertices: Vec<VertexId> = vertices
            .into_iter()
            .map(|v| VertexId(v.as_ref().to_owned()))
            .collect();
        if vertices.is_empty() {
            return Err(QuiverError::EmptyVertexSet);
        }
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.0.clone()) {
                return Err(QuiverError::DuplicateName(v.0.clone()));
            }
        }
        let index_of = |name: &str| vertices.iter().position(|v| v.0 == name);
        let mut arrow_names = BTreeSet::new();
        let mut built = Vec::new();
        for (name, s, t) in arrows {
            let name = name.as_ref().to_owned();
            if !arrow_names.insert(name.clone()) {
                return Err(QuiverError::DuplicateName(name));
            }
            let source = index_of(s.as_ref()).ok_or_else(|| QuiverError::DanglingEndpoint {
                arrow: name.clone(),
                vertex: s.as_ref().to_owned(),
            })?;
            let target = index_of(t.as_ref()).ok_or_else(|| QuiverError::DanglingEndpoint {
                arrow: name.clone(),
                vertex: t.as_ref().to_owned(),
            })?;
            built.push(Arrow {
                name,
                source,
                target,
            });
        }
        let q = Quiver {
            vertices,
            arrows: built,
        };
        q.validate()?;
        Ok(q)
    }

    /// Re-check every structural invariant.
    pub fn validate(&self) -> Result<(), QuiverError> {
        if self.vertices.is_empty() {
            return Err(QuiverError::EmptyVertexSet);
        }
        let mut names = BTreeSet::new();
        for v in &self.vertices {
            if !names.insert(&v.0) {
                return Err(QuiverError::DuplicateName(v.0.clone()));
            }
        }
        let mut arrow_names = BTreeSet::new();
        for a in &self.arrows {
            if !arrow_names.insert(&a.name) {
                return Err(QuiverError::DuplicateName(a.name.clone()));
            }
            for end in [a.source, a.target] {
                if end >= self.vertices.len() {
                    return Err(QuiverError::DanglingEndpoint {
                        arrow: a.name.clone(),
                        vertex: format!("#{end}"),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.0 == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrow_path(&self, arrow: usize) -> Path {
        let a = &self.arrows[arrow];
        Path::from_parts(a.source, a.target, vec![arrow])
    }

    pub fn arrow_paths(&self) -> Vec<Path> {
        (0..self.arrows.len()).map(|a| self.arrow_path(a)).collect()
    }

    /// Build a path from arrow indices, checking composability.
    pub fn path(&self, arrows: &[usize]) -> Result<Path, QuiverError> {
        let first = arrows
            .first()
            .expect("use Path::trivial for length-zero paths");
        for &a in arrows {
            if a >= self.arrows.len() {
                return Err(QuiverError::UnknownArrow(format!("#{a}")));
            }
        }
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(QuiverError::NotComposable(
                    self.arrows[w[0]].name.clone(),
                    self.arrows[w[1]].name.clone(),
                ));
            }
        }
        let last = arrows[arrows.len() - 1];
        Ok(Path::from_parts(
            self.arrows[*first].source,
            self.arrows[last].target,
            arrows.to_vec(),
        ))
    }

    /// Build a path from arrow names in traversal order.
    pub fn path_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Path, QuiverError> {
        let idx = names
            .iter()
            .map(|n| {
                self.arrow_index(n.as_ref())
                    .ok_or_else(|| QuiverError::UnknownArrow(n.as_ref().to_owned()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.path(&idx)
    }

    /// Human-readable label: `e_<vertex>` for trivial paths, arrow names joined by `*` otherwise.
    pub fn path_label(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e_{}", self.vertices[p.source])
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }

    /// Sort paths by length, then arrow names, then source position.
    pub fn sort_paths(&self, paths: &mut [Path]) {
        paths.sort_by_cached_key(|p| {
            (
                p.len(),
                p.arrows
                    .iter()
                    .map(|&a| self.arrows[a].name.clone())
                    .collect::<Vec<_>>(),
                p.source,
            )
        });
    }

    /// True iff no path of positive length starts and ends at the same vertex.
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Vertex indices in a topological order, or `None` when a cycle exists.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut indegree = vec![0usize; n];
        for a in &self.arrows {
            indegree[a.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indegree[a.target] -= 1;
                if indegree[a.target] == 0 {
                    queue.push_back(a.target);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Connected components of the underlying undirected graph, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Component> {
        let n = self.vertices.len();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            label[start] = next;
            while let Some(v) = stack.pop() {
                for a in &self.arrows {
                    let other = if a.source == v {
                        a.target
                    } else if a.target == v {
                        a.source
                    } else {
                        continue;
                    };
                    if label[other] == usize::MAX {
                        label[other] = next;
                        stack.push(other);
                    }
                }
            }
            next += 1;
        }
        (0..next)
            .map(|c| {
                let vertex_map: Vec<usize> = (0..n).filter(|&v| label[v] == c).collect();
                let arrow_map: Vec<usize> = (0..self.arrows.len())
                    .filter(|&a| label[self.arrows[a].source] == c)
                    .collect();
                let local = |v: usize| vertex_map.iter().position(|&w| w == v).unwrap();
                let quiver = Quiver {
                    vertices: vertex_map.iter().map(|&v| self.vertices[v].clone()).collect(),
                    arrows: arrow_map
                        .iter()
                        .map(|&a| {
                            let arrow = &self.arrows[a];
                            Arrow {
                                name: arrow.name.clone(),
                                source: local(arrow.source),
                                target: local(arrow.target),
                            }
                        })
                        .collect(),
                };
                Component {
                    quiver,
                    vertex_map,
                    arrow_map,
                }
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// All paths of length at most `max_length`; all paths when `None` (acyclic quivers only).
    ///
    /// Ordered by length, then lexicographically by arrow names.
    pub fn enumerate_paths(&self, max_length: Option<usize>) -> Result<Vec<Path>, QuiverError> {
        if max_length.is_none() && !self.is_acyclic() {
            return Err(QuiverError::InfinitePathSet);
        }
        let mut all: Vec<Path> = (0..self.vertices.len()).map(Path::trivial).collect();
        let mut frontier = all.clone();
        let mut length = 0;
        while !frontier.is_empty() && max_length.is_none_or(|m| length < m) {
            let mut next = Vec::new();
            for p in &frontier {
                for (i, a) in self.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(i);
                        next.push(Path::from_parts(p.source, a.target, arrows));
                    }
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
            length += 1;
        }
        self.sort_paths(&mut all);
        Ok(all)
    }

    /// Number of paths from each vertex to each vertex, `counts[x][y]` = #paths x→y.
    ///
    /// Dynamic programming over a topological order; acyclic quivers only.
    pub fn path_counts(&self) -> Result<Vec<Vec<u128>>, QuiverError> {
        let order = self.topological_order().ok_or(QuiverError::InfinitePathSet)?;
        let n = self.vertices.len();
        let mut counts = vec![vec![0u128; n]; n];
        for x in 0..n {
            counts[x][x] = 1;
            for &v in &order {
                if counts[x][v] == 0 {
                    continue;
                }
                let c = counts[x][v];
                for a in self.arrows.iter().filter(|a| a.source == v) {
                    counts[x][a.target] += c;
                }
            }
        }
        Ok(counts)
    }

    /// At most one path between any ordered pair of vertices.
    pub fn is_narrow(&self) -> Result<bool, QuiverError> {
        let counts = self
            .path_counts()
            .map_err(|_| QuiverError::NarrownessRequiresAcyclic)?;
        Ok(counts.iter().flatten().all(|&c| c <= 1))
    }

    /// Number of arrows from `x` to `y`.
    pub fn arrows_between(&self, x: usize, y: usize) -> usize {
        self.arrows
            .iter()
            .filter(|a| a.source == x && a.target == y)
            .count()
    }

    /// Disjoint union; colliding names from `other` get primes appended.
    ///
    /// Returns the union and the vertex and arrow offsets of `other`'s items.
    pub fn disjoint_union(&self, other: &Quiver) -> (Quiver, usize, usize) {
        fn fresh(taken: &BTreeSet<String>, name: &str) -> String {
            let mut candidate = name.to_owned();
            while taken.contains(&candidate) {
                candidate.push('\'');
            }
            candidate
        }
        let mut vnames: BTreeSet<String> = self.vertices.iter().map(|v| v.0.clone()).collect();
        let mut anames: BTreeSet<String> = self.arrows.iter().map(|a| a.name.clone()).collect();
        let mut vertices = self.vertices.clone();
        for v in &other.vertices {
            let name = fresh(&vnames, &v.0);
            vnames.insert(name.clone());
            vertices.push(VertexId(name));
        }
        let voff = self.vertices.len();
        let mut arrows = self.arrows.clone();
        for a in &other.arrows {
            let name = fresh(&anames, &a.name);
            anames.insert(name.clone());
            arrows.push(Arrow {
                name,
                source: a.source + voff,
                target: a.target + voff,
            });
        }
        (
            Quiver { vertices, arrows },
            voff,
            self.arrows.len(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn a2() -> Quiver {
        Quiver::new(["x", "y"], [("a", "x", "y")]).unwrap()
    }

    fn a3() -> Quiver {
        Quiver::new(["x", "y", "z"], [("a", "x", "y"), ("b", "y", "z")]).unwrap()
    }

    fn kronecker(n: usize) -> Quiver {
        let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
        Quiver::new(
            ["x", "y"].map(String::from),
            names.iter().map(|n| (n.clone(), "x".into(), "y".into())),
        )
        .unwrap()
    }

    fn cycle3() -> Quiver {
        Quiver::new(
            ["1", "2", "3"],
            [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")],
        )
        .unwrap()
    }

    fn crown() -> Quiver {
        Quiver::new(
            ["a", "b", "c", "d"],
            [
                ("ac", "a", "c"),
                ("ad", "a", "d"),
                ("bc", "b", "c"),
                ("bd", "b", "d"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validate_rejects_bad_input() {
        assert!(a2().validate().is_ok());
        assert!(matches!(
            Quiver::new(["x"], [("a", "x", "nowhere")]),
            Err(QuiverError::DanglingEndpoint { .. })
        ));
        assert_eq!(
            Quiver::new(Vec::<&str>::new(), Vec::<(&str, &str, &str)>::new()),
            Err(QuiverError::EmptyVertexSet)
        );
        assert_eq!(
            Quiver::new(["x", "x"], Vec::<(&str, &str, &str)>::new()),
            Err(QuiverError::DuplicateName("x".into()))
        );
        assert_eq!(
            Quiver::new(["x", "y"], [("a", "x", "y"), ("a", "y", "x")]),
            Err(QuiverError::DuplicateName("a".into()))
        );
    }

    #[test]
    fn acyclicity() {
        assert!(a2().is_acyclic());
        assert!(!cycle3().is_acyclic());
        let looped = Quiver::new(["v"], [("l", "v", "v")]).unwrap();
        assert!(!looped.is_acyclic());
    }

    #[test]
    fn components() {
        assert_eq!(a2().connected_components().len(), 1);
        let (two, _, _) = a2().disjoint_union(&a2());
        let comps = two.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[1].vertex_map, vec![2, 3]);
        assert_eq!(comps[1].quiver.arrows()[0].name, "a'");
        let isolated = Quiver::new(["p", "q", "r"], Vec::<(&str, &str, &str)>::new()).unwrap();
        assert_eq!(isolated.connected_components().len(), 3);
    }

    #[test]
    fn path_enumeration() {
        let q = a3();
        let paths = q.enumerate_paths(None).unwrap();
        let labels: Vec<String> = paths.iter().map(|p| q.path_label(p)).collect();
        assert_eq!(labels, ["e_x", "e_y", "e_z", "a", "b", "a*b"]);
        assert_eq!(kronecker(2).enumerate_paths(None).unwrap().len(), 4);
        assert_eq!(cycle3().enumerate_paths(Some(2)).unwrap().len(), 9);
        assert_eq!(
            cycle3().enumerate_paths(None),
            Err(QuiverError::InfinitePathSet)
        );
    }

    #[test]
    fn composition() {
        let q = a3();
        let a = q.arrow_path(0);
        let b = q.arrow_path(1);
        assert_eq!(compose(&Path::trivial(0), &a), Some(a.clone()));
        assert_eq!(compose(&a, &b), Some(q.path(&[0, 1]).unwrap()));
        assert_eq!(compose(&b, &a), None);
    }

    #[test]
    fn parallel_pair_counts() {
        for n in 1..5 {
            let q = kronecker(n);
            assert_eq!(parallel_pairs(&q.arrow_paths(), &q.arrow_paths()).len(), n * n);
        }
        let q = a3();
        let pairs = parallel_pairs(&q.enumerate_paths(None).unwrap(), &q.arrow_paths());
        assert_eq!(pairs.len(), 2);
        assert!(pairs.iter().all(|p| p.left == p.right));
        let c = crown();
        assert_eq!(
            parallel_pairs(&c.enumerate_paths(None).unwrap(), &c.arrow_paths()).len(),
            4
        );
    }

    #[test]
    fn narrowness() {
        assert_eq!(a3().is_narrow(), Ok(true));
        assert_eq!(kronecker(2).is_narrow(), Ok(false));
        assert_eq!(crown().is_narrow(), Ok(true));
        assert_eq!(
            cycle3().is_narrow(),
            Err(QuiverError::NarrownessRequiresAcyclic)
        );
    }

    #[test]
    fn path_building_checks_composability() {
        let q = a3();
        assert!(matches!(q.path(&[1, 0]), Err(QuiverError::NotComposable(..))));
        assert_eq!(q.path_by_names(&["a", "b"]).unwrap().len(), 2);
        assert!(q.path_by_names(&["zz"]).is_err());
    }

    #[test]
    fn substitution_and_occurrence() {
        let q = Quiver::new(
            ["1", "2", "3"],
            [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "3")],
        )
        .unwrap();
        let ab = q.path_by_names(&["a", "b"]).unwrap();
        let ac = q.path_by_names(&["a", "c"]).unwrap();
        assert_eq!(ab.substitute(1, &q.arrow_path(2)), ac);
        assert!(ab.contains(&q.arrow_path(0)));
        assert!(!ab.contains(&q.arrow_path(2)));
        assert_eq!(ab.occurrences(&q.arrow_path(1)).collect::<Vec<_>>(), [1]);
    }
}
