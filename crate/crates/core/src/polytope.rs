//! Combinatorial simple polytopes of dimension 2 and 3.
//!
//! A polytope is stored as a planar map: facets are cyclic vertex lists
//! (polygonal faces for dimension 3, 2-vertex edges for dimension 2).
//! Everything downstream — h-vectors, colorings, homology, doubling —
//! is derived from this incidence data alone; there are no coordinates.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// An edge of a 3-polytope, derived from the facet cycles.
///
/// `facets` keeps multiplicity: a well-formed polytope has exactly two
/// distinct entries, anything else is reported by [`Polytope::validate`].
#[derive(Clone, Debug)]
pub struct Edge {
    pub ends: (usize, usize),
    pub facets: Vec<usize>,
}

/// Combinatorial polytope as a planar map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    facets: Vec<Vec<usize>>,
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    edge_facets: Vec<Vec<usize>>,
    vertex_facets: Vec<Vec<usize>>,
}

/// One failed validation rule.
#[derive(Clone, Debug)]
pub struct Violation {
    pub rule: &'static str,
    pub message: String,
    pub ids: Vec<usize>,
}

/// Outcome of [`Polytope::validate`] or [`Polytope::pogorelov_check`].
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, rule: &'static str, message: String, ids: Vec<usize>) {
        self.violations.push(Violation { rule, message, ids });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {}", v.rule, v.message)?;
        }
        Ok(())
    }
}

/// A combinatorial automorphism: a facet permutation together with the
/// vertex permutation witnessing flag consistency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePermutation {
    pub facets: Vec<usize>,
    pub vertices: Vec<usize>,
}

impl FacePermutation {
    pub fn identity(facet_count: usize, vertex_count: usize) -> Self {
        FacePermutation {
            facets: (0..facet_count).collect(),
            vertices: (0..vertex_count).collect(),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &FacePermutation) -> Self {
        FacePermutation {
            facets: other.facets.iter().map(|&f| self.facets[f]).collect(),
            vertices: other.vertices.iter().map(|&v| self.vertices[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut facets = vec![0; self.facets.len()];
        let mut vertices = vec![0; self.vertices.len()];
        for (i, &f) in self.facets.iter().enumerate() {
            facets[f] = i;
        }
        for (i, &v) in self.vertices.iter().enumerate() {
            vertices[v] = i;
        }
        FacePermutation { facets, vertices }
    }

    pub fn is_identity(&self) -> bool {
        self.facets.iter().enumerate().all(|(i, &f)| i == f)
            && self.vertices.iter().enumerate().all(|(i, &v)| i == v)
    }
}

impl Polytope {
    /// Build a polytope from facet cycles, deriving edges and incidences.
    ///
    /// Checks structure only (id contiguity, no repeated vertex in a
    /// cycle); simplicity and the planar-map conditions are checked by
    /// [`Polytope::validate`].
    pub fn new(dim: usize, facets: Vec<Vec<usize>>) -> Result<Polytope> {
        if dim != 2 && dim != 3 {
            return Err(Error::InvalidPolytope(format!(
                "dimension must be 2 or 3, got {dim}"
            )));
        }
        if facets.is_empty() {
            return Err(Error::InvalidPolytope("no facets".into()));
        }
        let mut max_vertex = 0;
        for (fid, cycle) in facets.iter().enumerate() {
            if cycle.len() < 2 {
                return Err(Error::InvalidPolytope(format!(
                    "facet {fid} has fewer than 2 vertices"
                )));
            }
            let mut seen = cycle.clone();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidPolytope(format!(
                    "facet {fid} lists a vertex more than once"
                )));
            }
            max_vertex = max_vertex.max(*seen.last().unwrap());
        }
        let vertex_count = max_vertex + 1;
        let mut present = vec![false; vertex_count];
        let mut vertex_facets = vec![Vec::new(); vertex_count];
        for (fid, cycle) in facets.iter().enumerate() {
            for &v in cycle {
                present[v] = true;
                vertex_facets[v].push(fid);
            }
        }
        if let Some(missing) = present.iter().position(|&p| !p) {
            return Err(Error::VertexIdGap { missing });
        }
        for vf in &mut vertex_facets {
            vf.sort_unstable();
        }

        let (edges, edge_facets) = if dim == 3 {
            let mut map: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
            for (fid, cycle) in facets.iter().enumerate() {
                for i in 0..cycle.len() {
                    let a = cycle[i];
                    let b = cycle[(i + 1) % cycle.len()];
                    let key = (a.min(b), a.max(b));
                    map.entry(key).or_default().push(fid);
                }
            }
            let mut keys: Vec<(usize, usize)> = map.keys().copied().collect();
            keys.sort_unstable();
            let facets_per_edge = keys
                .iter()
                .map(|k| {
                    let mut fs = map.remove(k).unwrap();
                    fs.sort_unstable();
                    fs
                })
                .collect();
            (keys, facets_per_edge)
        } else {
            (Vec::new(), Vec::new())
        };

        Ok(Polytope {
            dim,
            facets,
            vertex_count,
            edges,
            edge_facets,
            vertex_facets,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Edge count; for dimension 2 the facets are the edges.
    pub fn edge_count(&self) -> usize {
        if self.dim == 2 {
            self.facets.len()
        } else {
            self.edges.len()
        }
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn facet(&self, id: usize) -> Result<&[usize]> {
        self.facets
            .get(id)
            .map(|c| c.as_slice())
            .ok_or(Error::UnknownFacet(id))
    }

    /// Derived edges of a 3-polytope as `(ends, facet ids)` pairs, sorted
    /// by endpoints. Empty for dimension 2.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges
            .iter()
            .zip(&self.edge_facets)
            .map(|(&ends, facets)| Edge {
                ends,
                facets: facets.clone(),
            })
    }

    pub fn edge_ends(&self, edge: usize) -> (usize, usize) {
        self.edges[edge]
    }

    pub fn edge_facet_ids(&self, edge: usize) -> &[usize] {
        &self.edge_facets[edge]
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok()
    }

    /// Facet ids incident to a vertex, sorted ascending.
    pub fn vertex_facet_ids(&self, v: usize) -> &[usize] {
        &self.vertex_facets[v]
    }

    // ------------------------------------------------------------------
    // file format
    // ------------------------------------------------------------------

    /// Parse the text format: a `dim=<n>` header followed by one
    /// `face <id>: v0 v1 ... vk` line per facet (vertices in cyclic
    /// order); `#` starts a comment. Does not validate simplicity.
    pub fn parse(text: &str) -> Result<Polytope> {
        let mut dim: Option<usize> = None;
        let mut faces: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let content = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            if content.trim().is_empty() {
                continue;
            }
            let toks = tokens_with_cols(content);
            if dim.is_none() {
                let (tok, col) = toks[0];
                let rest = tok.strip_prefix("dim=").ok_or_else(|| Error::Syntax {
                    line: line_no,
                    col,
                    msg: "expected `dim=<n>` header".into(),
                })?;
                let n: usize = rest.parse().map_err(|_| Error::Syntax {
                    line: line_no,
                    col: col + 4,
                    msg: format!("invalid dimension `{rest}`"),
                })?;
                if n != 2 && n != 3 {
                    return Err(Error::Syntax {
                        line: line_no,
                        col: col + 4,
                        msg: format!("dimension must be 2 or 3, got {n}"),
                    });
                }
                if toks.len() > 1 {
                    return Err(Error::Syntax {
                        line: line_no,
                        col: toks[1].1,
                        msg: "trailing tokens after dimension header".into(),
                    });
                }
                dim = Some(n);
                continue;
            }
            let (kw, kw_col) = toks[0];
            if kw != "face" {
                return Err(Error::Syntax {
                    line: line_no,
                    col: kw_col,
                    msg: format!("expected `face <id>: ...`, got `{kw}`"),
                });
            }
            if toks.len() < 2 {
                return Err(Error::Syntax {
                    line: line_no,
                    col: kw_col + kw.len(),
                    msg: "missing facet id".into(),
                });
            }
            let (id_tok, id_col) = toks[1];
            let (id_str, mut rest_at) = match id_tok.strip_suffix(':') {
                Some(s) => (s, 2),
                None => {
                    if toks.len() < 3 || toks[2].0 != ":" {
                        return Err(Error::Syntax {
                            line: line_no,
                            col: id_col + id_tok.len(),
                            msg: "expected `:` after facet id".into(),
                        });
                    }
                    (id_tok, 3)
                }
            };
            let id: usize = id_str.parse().map_err(|_| Error::Syntax {
                line: line_no,
                col: id_col,
                msg: format!("invalid facet id `{id_str}`"),
            })?;
            let mut cycle = Vec::new();
            while rest_at < toks.len() {
                let (vt, vcol) = toks[rest_at];
                let v: usize = vt.parse().map_err(|_| Error::Syntax {
                    line: line_no,
                    col: vcol,
                    msg: format!("invalid vertex id `{vt}`"),
                })?;
                if cycle.contains(&v) {
                    return Err(Error::Syntax {
                        line: line_no,
                        col: vcol,
                        msg: format!("facet {id} lists vertex {v} twice"),
                    });
                }
                cycle.push(v);
                rest_at += 1;
            }
            if cycle.len() < 2 {
                return Err(Error::Syntax {
                    line: line_no,
                    col: id_col,
                    msg: format!("facet {id} needs at least 2 vertices"),
                });
            }
            if faces.iter().any(|(other, _, _)| *other == id) {
                return Err(Error::DuplicateFacetId { id, line: line_no });
            }
            faces.push((id, cycle, line_no));
        }
        let dim = dim.ok_or_else(|| Error::Syntax {
            line: 1,
            col: 1,
            msg: "missing `dim=<n>` header".into(),
        })?;
        if faces.is_empty() {
            return Err(Error::Syntax {
                line: 1,
                col: 1,
                msg: "no facets".into(),
            });
        }
        faces.sort_by_key(|(id, _, _)| *id);
        for (want, (id, _, _)) in faces.iter().enumerate() {
            if *id != want {
                return Err(Error::FacetIdGap { missing: want });
            }
        }
        Polytope::new(dim, faces.into_iter().map(|(_, c, _)| c).collect())
    }

    /// Inverse of [`Polytope::parse`]: facets sorted by id.
    pub fn serialize(&self) -> String {
        let mut out = format!("dim={}\n", self.dim);
        for (id, cycle) in self.facets.iter().enumerate() {
            out.push_str(&format!("face {id}:"));
            for v in cycle {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        out
    }

    // ------------------------------------------------------------------
    // validation
    // ------------------------------------------------------------------

    /// Check the simple-polytope planar-map invariants and collect every
    /// failed rule.
    pub fn validate(&self) -> ValidationReport {
        self.validate_with(false)
    }

    /// Like [`Polytope::validate`] plus a brute-force 3-connectivity
    /// check of the vertex-edge graph (dimension 3 only).
    pub fn validate_strict(&self) -> ValidationReport {
        self.validate_with(true)
    }

    fn validate_with(&self, strict: bool) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.dim;
        for (fid, cycle) in self.facets.iter().enumerate() {
            let want = if n == 2 { 2 } else { 3 };
            let bad = if n == 2 {
                cycle.len() != 2
            } else {
                cycle.len() < 3
            };
            if bad {
                report.push(
                    "face-size",
                    format!(
                        "facet {fid} has {} vertices, expected {}{}",
                        cycle.len(),
                        if n == 2 { "exactly " } else { "at least " },
                        want
                    ),
                    vec![fid],
                );
            }
        }
        for (v, fs) in self.vertex_facets.iter().enumerate() {
            if fs.len() != n || fs.windows(2).any(|w| w[0] == w[1]) {
                report.push(
                    "vertex-valence",
                    format!("vertex {v} lies in {} facets, expected {n}", fs.len()),
                    vec![v],
                );
            }
        }
        if n == 2 {
            let (v, e, f) = (self.vertex_count, self.edge_count(), self.facet_count());
            if v != f {
                report.push(
                    "polygon-cycle",
                    format!("{v} vertices but {f} edge facets"),
                    vec![],
                );
            }
            if v < 3 {
                report.push("size", format!("only {v} vertices, need at least 3"), vec![]);
            }
            if !self.vertex_graph_connected() {
                report.push(
                    "polygon-cycle",
                    "edges do not form a single cycle".into(),
                    vec![],
                );
            }
            let _ = e;
            return report;
        }

        for (eid, fs) in self.edge_facets.iter().enumerate() {
            let distinct = fs.len() == 2 && fs[0] != fs[1];
            if !distinct {
                let (a, b) = self.edges[eid];
                report.push(
                    "edge-facet-count",
                    format!(
                        "edge ({a},{b}) lies in {} facet incidences, expected 2 distinct",
                        fs.len()
                    ),
                    vec![a, b],
                );
            }
        }
        let (v, e, f) = (self.vertex_count, self.edges.len(), self.facets.len());
        if v as i64 - e as i64 + f as i64 != 2 {
            report.push(
                "euler",
                format!("V - E + F = {} - {} + {} != 2", v, e, f),
                vec![],
            );
        }
        if v < 4 {
            report.push("size", format!("only {v} vertices, need at least 4"), vec![]);
        }
        if !self.vertex_graph_connected() {
            report.push("connected", "planar map is not connected".into(), vec![]);
        }
        self.check_vertex_links(&mut report);
        if strict && report.ok() && !self.three_connected() {
            report.push(
                "three-connected",
                "vertex-edge graph is not 3-connected".into(),
                vec![],
            );
        }
        report
    }

    fn vertex_graph_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.vertex_count];
        if self.dim == 2 {
            for cycle in &self.facets {
                adj[cycle[0]].push(cycle[1]);
                adj[cycle[1]].push(cycle[0]);
            }
        } else {
            for &(a, b) in &self.edges {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// At each vertex the incident edges and facets must form a single
    /// wheel: every incident edge lies in exactly two of the vertex's
    /// facets and the pairing is one connected cycle. This rules out
    /// pinched vertices that Euler counting alone misses.
    fn check_vertex_links(&self, report: &mut ValidationReport) {
        for v in 0..self.vertex_count {
            let mut incident: Vec<usize> = Vec::new();
            for (eid, &(a, b)) in self.edges.iter().enumerate() {
                if a == v || b == v {
                    incident.push(eid);
                }
            }
            let pos: HashMap<usize, usize> =
                incident.iter().enumerate().map(|(i, &e)| (e, i)).collect();
            let mut degree = vec![0usize; incident.len()];
            let mut links: Vec<(usize, usize)> = Vec::new();
            let mut ok = true;
            for &fid in &self.vertex_facets[v] {
                let cycle = &self.facets[fid];
                let i = cycle.iter().position(|&x| x == v).unwrap();
                let prev = cycle[(i + cycle.len() - 1) % cycle.len()];
                let next = cycle[(i + 1) % cycle.len()];
                let (Some(e1), Some(e2)) = (self.edge_id(v, prev), self.edge_id(v, next)) else {
                    ok = false;
                    break;
                };
                let (p1, p2) = (pos[&e1], pos[&e2]);
                degree[p1] += 1;
                degree[p2] += 1;
                links.push((p1, p2));
            }
            if ok && degree.iter().all(|&d| d == 2) && !incident.is_empty() {
                // connectivity of the link multigraph
                let mut adj = vec![Vec::new(); incident.len()];
                for (a, b) in links {
                    adj[a].push(b);
                    adj[b].push(a);
                }
                let mut seen = vec![false; incident.len()];
                let mut stack = vec![0];
                seen[0] = true;
                let mut cnt = 1;
                while let Some(u) = stack.pop() {
                    for &w in &adj[u] {
                        if !seen[w] {
                            seen[w] = true;
                            cnt += 1;
                            stack.push(w);
                        }
                    }
                }
                ok = cnt == incident.len();
            } else {
                ok = false;
            }
            if !ok {
                report.push(
                    "vertex-link",
                    format!("faces around vertex {v} do not form a single wheel"),
                    vec![v],
                );
            }
        }
    }

    fn three_connected(&self) -> bool {
        if self.vertex_count < 5 {
            return self.vertex_count == 4; // K4 is the only case
        }
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for x in 0..self.vertex_count {
            for y in x + 1..self.vertex_count {
                let mut seen = vec![false; self.vertex_count];
                seen[x] = true;
                seen[y] = true;
                let start = (0..self.vertex_count).find(|&u| !seen[u]).unwrap();
                let mut stack = vec![start];
                seen[start] = true;
                let mut cnt = 1;
                while let Some(u) = stack.pop() {
                    for &w in &adj[u] {
                        if !seen[w] {
                            seen[w] = true;
                            cnt += 1;
                            stack.push(w);
                        }
                    }
                }
                if cnt != self.vertex_count - 2 {
                    return false;
                }
            }
        }
        true
    }

    // ------------------------------------------------------------------
    // counting
    // ------------------------------------------------------------------

    /// `(V, E, F)` for dimension 3, `(V, E)` for dimension 2.
    /// Requires a valid polytope.
    pub fn f_vector(&self) -> Result<Vec<usize>> {
        self.require_valid()?;
        Ok(if self.dim == 3 {
            vec![self.vertex_count, self.edges.len(), self.facets.len()]
        } else {
            vec![self.vertex_count, self.facets.len()]
        })
    }

    /// Dual f-vector `(f_0, ..., f_{n-1})` in codimension order:
    /// facet, edge, vertex counts for dimension 3.
    pub fn dual_f_vector(&self) -> Result<Vec<usize>> {
        self.require_valid()?;
        Ok(if self.dim == 3 {
            vec![self.facets.len(), self.edges.len(), self.vertex_count]
        } else {
            vec![self.facets.len(), self.vertex_count]
        })
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.ok() {
            Ok(())
        } else {
            Err(Error::InvalidPolytope(report.to_string()))
        }
    }

    // ------------------------------------------------------------------
    // automorphisms
    // ------------------------------------------------------------------

    /// All combinatorial automorphisms, including orientation-reversing
    /// ones: fix a base flag, try to map it to every flag, and propagate
    /// through the flag involutions, keeping the consistent maps.
    pub fn automorphism_group(&self) -> Result<Vec<FacePermutation>> {
        self.require_valid()?;
        let flags = FlagSystem::build(self)?;
        let mut out = Vec::new();
        for target in 0..flags.len() {
            let Some(phi) = flag_map(&flags.tables, &flags.tables, target) else {
                continue;
            };
            let mut facets = vec![usize::MAX; self.facets.len()];
            let mut vertices = vec![usize::MAX; self.vertex_count];
            let mut consistent = true;
            for (x, &y) in phi.iter().enumerate() {
                let (vx, _, fx) = flags.components[x];
                let (vy, _, fy) = flags.components[y];
                if facets[fx] == usize::MAX {
                    facets[fx] = fy;
                } else if facets[fx] != fy {
                    consistent = false;
                    break;
                }
                if vertices[vx] == usize::MAX {
                    vertices[vx] = vy;
                } else if vertices[vx] != vy {
                    consistent = false;
                    break;
                }
            }
            if consistent {
                out.push(FacePermutation { facets, vertices });
            }
        }
        Ok(out)
    }

    /// Combinatorial isomorphism test via flag propagation.
    pub fn is_isomorphic_to(&self, other: &Polytope) -> Result<bool> {
        self.require_valid()?;
        other.require_valid()?;
        if self.dim != other.dim
            || self.vertex_count != other.vertex_count
            || self.facets.len() != other.facets.len()
            || self.edge_count() != other.edge_count()
        {
            return Ok(false);
        }
        let fa = FlagSystem::build(self)?;
        let fb = FlagSystem::build(other)?;
        if fa.len() != fb.len() {
            return Ok(false);
        }
        Ok((0..fb.len()).any(|t| flag_map(&fa.tables, &fb.tables, t).is_some()))
    }

    /// Rename vertices and facets through the given permutations
    /// (`perm[i]` is the new id of `i`). Used for symmetry-invariance
    /// testing; the result is the same polytope with different labels.
    pub fn relabel(&self, vertex_perm: &[usize], facet_perm: &[usize]) -> Result<Polytope> {
        if !is_permutation(vertex_perm, self.vertex_count)
            || !is_permutation(facet_perm, self.facets.len())
        {
            return Err(Error::InvalidPolytope(
                "relabel requires permutations of the vertex and facet ids".into(),
            ));
        }
        let mut facets = vec![Vec::new(); self.facets.len()];
        for (fid, cycle) in self.facets.iter().enumerate() {
            facets[facet_perm[fid]] = cycle.iter().map(|&v| vertex_perm[v]).collect();
        }
        Polytope::new(self.dim, facets)
    }

    // ------------------------------------------------------------------
    // right-angled realizability
    // ------------------------------------------------------------------

    /// Combinatorial test for the compact right-angled (Pogorelov)
    /// class: trivalent (already enforced by `validate`), every face
    /// with at least 5 edges, and no prismatic 3- or 4-circuit.
    ///
    /// A k-cycle of faces in the dual graph is prismatic when the k
    /// edges it crosses are pairwise vertex-disjoint; cycles around a
    /// vertex or an edge figure always share endpoints and are ignored.
    pub fn pogorelov_check(&self) -> Result<ValidationReport> {
        if self.dim != 3 {
            return Err(Error::Dimension {
                expected: 3,
                actual: self.dim,
            });
        }
        self.require_valid()?;
        let mut report = ValidationReport::default();
        for (fid, cycle) in self.facets.iter().enumerate() {
            if cycle.len() < 5 {
                report.push(
                    "face-size-5",
                    format!("facet {fid} has only {} edges", cycle.len()),
                    vec![fid],
                );
            }
        }

        let f = self.facets.len();
        let mut shared: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (eid, fs) in self.edge_facets.iter().enumerate() {
            let (a, b) = (fs[0].min(fs[1]), fs[0].max(fs[1]));
            shared.entry((a, b)).or_default().push(eid);
        }
        let mut neighbors = vec![Vec::new(); f];
        for (&(a, b), es) in &shared {
            if es.len() > 1 {
                report.push(
                    "prismatic-circuit",
                    format!("facets {a} and {b} share {} edges", es.len()),
                    vec![a, b],
                );
            }
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        let crossing = |a: usize, b: usize| -> usize { shared[&(a.min(b), a.max(b))][0] };
        let disjoint = |es: &[usize]| -> bool {
            for i in 0..es.len() {
                for j in i + 1..es.len() {
                    let (a1, b1) = self.edges[es[i]];
                    let (a2, b2) = self.edges[es[j]];
                    if a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2 {
                        return false;
                    }
                }
            }
            true
        };

        // prismatic 3-circuits
        for a in 0..f {
            for &b in neighbors[a].iter().filter(|&&b| b > a) {
                for &c in neighbors[b].iter().filter(|&&c| c > b) {
                    if neighbors[a].binary_search(&c).is_ok()
                        && disjoint(&[crossing(a, b), crossing(b, c), crossing(a, c)])
                    {
                        report.push(
                            "prismatic-circuit",
                            format!("prismatic 3-circuit through facets {a}, {b}, {c}"),
                            vec![a, b, c],
                        );
                    }
                }
            }
        }
        // prismatic 4-circuits a-b-c-d with a the smallest facet id
        for a in 0..f {
            let nbs: Vec<usize> = neighbors[a].iter().copied().filter(|&x| x > a).collect();
            for (i, &b) in nbs.iter().enumerate() {
                for &d in &nbs[i + 1..] {
                    for &c in neighbors[b].iter().filter(|&&c| c > a && c != d) {
                        if neighbors[d].binary_search(&c).is_ok()
                            && disjoint(&[
                                crossing(a, b),
                                crossing(b, c),
                                crossing(c, d),
                                crossing(d, a),
                            ])
                        {
                            report.push(
                                "prismatic-circuit",
                                format!("prismatic 4-circuit through facets {a}, {b}, {c}, {d}"),
                                vec![a, b, c, d],
                            );
                        }
                    }
                }
            }
        }
        Ok(report)
    }
}

fn is_permutation(perm: &[usize], n: usize) -> bool {
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

fn tokens_with_cols(line: &str) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((&line[s..i], s + 1));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((&line[s..], s + 1));
    }
    out
}

// ----------------------------------------------------------------------
// flags
// ----------------------------------------------------------------------

/// Flags of the planar map with their adjacency involutions:
/// `tables[i][x]` changes the i-dimensional component of flag `x`.
/// Dimension 3 has three involutions (vertex, edge, facet), dimension 2
/// two (vertex, edge); a flag is stored as (vertex, edge, facet) with
/// edge == facet for dimension 2.
struct FlagSystem {
    components: Vec<(usize, usize, usize)>,
    tables: Vec<Vec<usize>>,
}

impl FlagSystem {
    fn len(&self) -> usize {
        self.components.len()
    }

    fn build(p: &Polytope) -> Result<FlagSystem> {
        if p.dim == 2 {
            return Self::build_polygon(p);
        }
        let mut components = Vec::new();
        let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
        // (facet, vertex) -> the two incident edges inside the facet
        let mut wedge: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        for (fid, cycle) in p.facets.iter().enumerate() {
            let m = cycle.len();
            for i in 0..m {
                let v = cycle[i];
                let prev = cycle[(i + m - 1) % m];
                let next = cycle[(i + 1) % m];
                let e_prev = p.edge_id(v, prev).unwrap();
                let e_next = p.edge_id(v, next).unwrap();
                wedge.insert((fid, v), (e_prev, e_next));
                for e in [e_prev, e_next] {
                    let flag = (v, e, fid);
                    if !index.contains_key(&flag) {
                        index.insert(flag, components.len());
                        components.push(flag);
                    }
                }
            }
        }
        let n = components.len();
        let mut s0 = vec![0; n];
        let mut s1 = vec![0; n];
        let mut s2 = vec![0; n];
        for (x, &(v, e, f)) in components.iter().enumerate() {
            let (a, b) = p.edges[e];
            let v_other = if a == v { b } else { a };
            s0[x] = index[&(v_other, e, f)];
            let (e1, e2) = wedge[&(f, v)];
            let e_other = if e == e1 { e2 } else { e1 };
            s1[x] = index[&(v, e_other, f)];
            let fs = &p.edge_facets[e];
            let f_other = if fs[0] == f { fs[1] } else { fs[0] };
            s2[x] = index[&(v, e, f_other)];
        }
        Ok(FlagSystem {
            components,
            tables: vec![s0, s1, s2],
        })
    }

    fn build_polygon(p: &Polytope) -> Result<FlagSystem> {
        let mut components = Vec::new();
        let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
        for (fid, cycle) in p.facets.iter().enumerate() {
            for &v in cycle {
                let flag = (v, fid, fid);
                index.insert(flag, components.len());
                components.push(flag);
            }
        }
        let n = components.len();
        let mut s0 = vec![0; n];
        let mut s1 = vec![0; n];
        for (x, &(v, fid, _)) in components.iter().enumerate() {
            let cycle = &p.facets[fid];
            let v_other = if cycle[0] == v { cycle[1] } else { cycle[0] };
            s0[x] = index[&(v_other, fid, fid)];
            let fs = &p.vertex_facets[v];
            let f_other = if fs[0] == fid { fs[1] } else { fs[0] };
            s1[x] = index[&(v, f_other, f_other)];
        }
        Ok(FlagSystem {
            components,
            tables: vec![s0, s1],
        })
    }
}

/// Propagate `base flag of A -> target flag of B` through the flag
/// involutions. Returns the full flag bijection when consistent.
fn flag_map(tables_a: &[Vec<usize>], tables_b: &[Vec<usize>], target: usize) -> Option<Vec<usize>> {
    let n = tables_a[0].len();
    let mut phi = vec![usize::MAX; n];
    let mut hit = vec![false; n];
    phi[0] = target;
    hit[target] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        let y = phi[x];
        for (ta, tb) in tables_a.iter().zip(tables_b) {
            let (xs, ys) = (ta[x], tb[y]);
            if phi[xs] == usize::MAX {
                if hit[ys] {
                    return None;
                }
                phi[xs] = ys;
                hit[ys] = true;
                stack.push(xs);
            } else if phi[xs] != ys {
                return None;
            }
        }
    }
    if phi.contains(&usize::MAX) {
        return None;
    }
    Some(phi)
}

// ----------------------------------------------------------------------
// builtins
// ----------------------------------------------------------------------

const CUBE_TEXT: &str = "\
dim=3
face 0: 0 2 6 4
face 1: 1 3 7 5
face 2: 0 1 5 4
face 3: 2 3 7 6
face 4: 0 1 3 2
face 5: 4 5 7 6
";

const DODECAHEDRON_TEXT: &str = "\
dim=3
face 0: 3 4 1 0 2
face 1: 1 6 7 5 0
face 2: 8 2 0 5 9
face 3: 10 12 11 7 6
face 4: 15 13 8 9 14
face 5: 18 17 4 3 16
face 6: 16 3 2 8 13
face 7: 4 17 10 6 1
face 8: 7 11 14 9 5
face 9: 12 19 15 14 11
face 10: 19 18 16 13 15
face 11: 17 18 19 12 10
";

/// The k-gon as a 2-polytope: facets are the k boundary edges.
pub fn polygon(k: usize) -> Result<Polytope> {
    if k < 3 {
        return Err(Error::InvalidPolytope(format!(
            "polygon needs at least 3 edges, got {k}"
        )));
    }
    Polytope::new(2, (0..k).map(|i| vec![i, (i + 1) % k]).collect())
}

/// The k-gonal prism: two k-gons joined by k quadrilaterals.
pub fn prism(k: usize) -> Result<Polytope> {
    if k < 3 {
        return Err(Error::InvalidPolytope(format!(
            "prism needs a base with at least 3 edges, got {k}"
        )));
    }
    let mut facets = vec![(0..k).collect::<Vec<_>>(), (k..2 * k).collect()];
    for i in 0..k {
        let j = (i + 1) % k;
        facets.push(vec![i, j, k + j, k + i]);
    }
    Polytope::new(3, facets)
}

/// Look up a seed polytope by name: `square`, `pentagon`, `cube`,
/// `dodecahedron`, or `<k>-prism`. The returned polytope is validated.
pub fn builtin(name: &str) -> Result<Polytope> {
    let p = match name {
        "square" => polygon(4)?,
        "pentagon" => polygon(5)?,
        "cube" => Polytope::parse(CUBE_TEXT)?,
        "dodecahedron" => Polytope::parse(DODECAHEDRON_TEXT)?,
        _ => match name.strip_suffix("-prism").and_then(|k| k.parse::<usize>().ok()) {
            Some(k) if k >= 3 => prism(k)?,
            _ => return Err(Error::UnknownBuiltin(name.to_string())),
        },
    };
    p.require_valid()?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_counts() {
        for (name, v, e, f) in [
            ("cube", 8, 12, 6),
            ("dodecahedron", 20, 30, 12),
            ("6-prism", 12, 18, 8),
            ("3-prism", 6, 9, 5),
        ] {
            let p = builtin(name).unwrap();
            assert_eq!(p.f_vector().unwrap(), vec![v, e, f], "{name}");
        }
        assert_eq!(builtin("square").unwrap().f_vector().unwrap(), vec![4, 4]);
        assert_eq!(builtin("pentagon").unwrap().f_vector().unwrap(), vec![5, 5]);
    }

    #[test]
    fn builtin_unknown() {
        assert!(matches!(builtin("icosahedron"), Err(Error::UnknownBuiltin(_))));
        assert!(matches!(builtin("2-prism"), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn parse_cube_file() {
        let p = Polytope::parse(CUBE_TEXT).unwrap();
        assert_eq!(p.vertex_count(), 8);
        assert_eq!(p.edge_count(), 12);
        assert_eq!(p.facet_count(), 6);
        assert!(p.validate().ok());
    }

    #[test]
    fn parse_square_file() {
        let text = "dim=2\nface 0: 0 1\nface 1: 1 2\nface 2: 2 3\nface 3: 3 0\n";
        let p = Polytope::parse(text).unwrap();
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.facet_count(), 4);
        assert!(p.validate().ok());
    }

    #[test]
    fn parse_rejects_repeated_vertex() {
        let text = "dim=3\nface 0: 0 1 2 1\n";
        match Polytope::parse(text) {
            Err(Error::Syntax { line: 2, col, .. }) => assert!(col > 0),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_duplicate_facet_id() {
        let text = "dim=2\nface 0: 0 1\nface 0: 1 2\n";
        assert!(matches!(
            Polytope::parse(text),
            Err(Error::DuplicateFacetId { id: 0, line: 3 })
        ));
    }

    #[test]
    fn parse_rejects_vertex_gap() {
        let text = "dim=2\nface 0: 0 2\nface 1: 2 3\nface 2: 3 0\n";
        assert!(matches!(
            Polytope::parse(text),
            Err(Error::VertexIdGap { missing: 1 })
        ));
    }

    #[test]
    fn parse_rejects_facet_gap() {
        let text = "dim=2\nface 0: 0 1\nface 2: 1 0\n";
        assert!(matches!(Polytope::parse(text), Err(Error::FacetIdGap { missing: 1 })));
    }

    #[test]
    fn parse_reports_position_of_bad_token() {
        let text = "dim=3\nface 0: 0 1 x 3\n";
        match Polytope::parse(text) {
            Err(Error::Syntax { line, col, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(col, 13);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "# a cube\ndim=3 # three dimensional\n\nface 0: 0 2 6 4\nface 1: 1 3 7 5\nface 2: 0 1 5 4\nface 3: 2 3 7 6\nface 4: 0 1 3 2\nface 5: 4 5 7 6\n";
        assert!(Polytope::parse(text).unwrap().validate().ok());
    }

    #[test]
    fn serialize_round_trip() {
        for name in ["square", "pentagon", "cube", "dodecahedron", "6-prism"] {
            let p = builtin(name).unwrap();
            let q = Polytope::parse(&p.serialize()).unwrap();
            assert_eq!(p, q, "{name}");
        }
    }

    #[test]
    fn validate_flags_missing_face() {
        let cube = builtin("cube").unwrap();
        let facets: Vec<Vec<usize>> = cube.facets()[..5].to_vec();
        let broken = Polytope::new(3, facets).unwrap();
        let report = broken.validate();
        assert!(!report.ok());
        assert!(report.violations.iter().any(|v| v.rule == "edge-facet-count"));
    }

    #[test]
    fn validate_builtins_ok() {
        for name in ["square", "pentagon", "cube", "dodecahedron", "6-prism", "3-prism"] {
            assert!(builtin(name).unwrap().validate().ok(), "{name}");
        }
    }

    #[test]
    fn strict_validation_of_builtins() {
        for name in ["cube", "dodecahedron", "6-prism"] {
            assert!(builtin(name).unwrap().validate_strict().ok(), "{name}");
        }
    }

    #[test]
    fn automorphism_orders() {
        assert_eq!(builtin("cube").unwrap().automorphism_group().unwrap().len(), 48);
        assert_eq!(builtin("square").unwrap().automorphism_group().unwrap().len(), 8);
        assert_eq!(builtin("pentagon").unwrap().automorphism_group().unwrap().len(), 10);
        assert_eq!(builtin("6-prism").unwrap().automorphism_group().unwrap().len(), 24);
    }

    #[test]
    fn dodecahedron_automorphisms() {
        let p = builtin("dodecahedron").unwrap();
        assert_eq!(p.automorphism_group().unwrap().len(), 120);
    }

    #[test]
    fn pogorelov_dodecahedron_ok_cube_fails() {
        let dode = builtin("dodecahedron").unwrap();
        assert!(dode.pogorelov_check().unwrap().ok());
        let cube = builtin("cube").unwrap();
        let report = cube.pogorelov_check().unwrap();
        assert!(report.violations.iter().any(|v| v.rule == "face-size-5"));
        // the four side faces around any axis form a 4-belt
        assert!(report.violations.iter().any(|v| v.rule == "prismatic-circuit"));
    }

    #[test]
    fn pogorelov_prism_circuits() {
        // 3-prism: the three squares form a prismatic 3-circuit
        let p3 = builtin("3-prism").unwrap();
        let r = p3.pogorelov_check().unwrap();
        assert!(r
            .violations
            .iter()
            .any(|v| v.rule == "prismatic-circuit" && v.message.contains("3-circuit")));
        // 5-prism: quadrilateral sides, and top-side-bottom-side 4-belts
        let p5 = builtin("5-prism").unwrap();
        let r = p5.pogorelov_check().unwrap();
        assert!(r.violations.iter().any(|v| v.rule == "face-size-5"));
        assert!(r
            .violations
            .iter()
            .any(|v| v.rule == "prismatic-circuit" && v.message.contains("4-circuit")));
    }

    #[test]
    fn pogorelov_rejects_dimension_2() {
        assert!(matches!(
            builtin("square").unwrap().pogorelov_check(),
            Err(Error::Dimension { expected: 3, actual: 2 })
        ));
    }

    #[test]
    fn isomorphism_distinguishes() {
        let cube = builtin("cube").unwrap();
        let prism4 = builtin("4-prism").unwrap();
        assert!(cube.is_isomorphic_to(&prism4).unwrap());
        assert!(!cube.is_isomorphic_to(&builtin("6-prism").unwrap()).unwrap());
    }

    #[test]
    fn relabel_preserves_structure() {
        let cube = builtin("cube").unwrap();
        let vperm: Vec<usize> = (0..8).map(|v| (v + 3) % 8).collect();
        let fperm = vec![2, 0, 1, 5, 4, 3];
        let q = cube.relabel(&vperm, &fperm).unwrap();
        assert!(q.validate().ok());
        assert!(q.is_isomorphic_to(&cube).unwrap());
    }
}
