//! Doubling towers: repeatedly reflect a 3-polytope along a facet.
//!
//! Doubling along a facet d glues two mirror copies: d disappears, the
//! neighbor of d across each boundary edge merges with its mirror into
//! one face, and the old vertices of d (which end up with only two
//! incident faces) are suppressed. The counts obey
//! V' = 2V - 2k, E' = 2E - 3k, F' = 2F - 2 - k for k = |d|.

use crate::cover::{self, Coloring};
use crate::error::{Error, Result};
use crate::polytope::Polytope;

/// Face-choice policy for building towers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Facet with the fewest vertices, smallest id on ties.
    MinVertexFace,
    /// Facet `j mod F` at level j.
    RoundRobin,
    /// Explicit facet id per level.
    Explicit(Vec<usize>),
}

impl Strategy {
    fn choose(&self, p: &Polytope, level: usize) -> Option<usize> {
        match self {
            Strategy::MinVertexFace => (0..p.facet_count())
                .min_by_key(|&f| (p.facets()[f].len(), f)),
            Strategy::RoundRobin => Some(level % p.facet_count()),
            Strategy::Explicit(list) => list.get(level).copied(),
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Strategy::MinVertexFace => write!(f, "min-face"),
            Strategy::RoundRobin => write!(f, "round-robin"),
            Strategy::Explicit(list) => {
                write!(f, "list:")?;
                for (i, x) in list.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

/// One level of a tower.
#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub polytope: Polytope,
    pub coloring: Coloring,
    /// Facet the strategy picks at this level (used to produce the next
    /// level; informational on the last one).
    pub next_face: Option<usize>,
    /// Vertex count of that facet.
    pub face_size: Option<usize>,
    /// Index of this level over the base: 2^j.
    pub index_over_base: u64,
}

/// A doubling tower with propagated colorings.
#[derive(Clone, Debug)]
pub struct TowerState {
    pub levels: Vec<TowerLevel>,
    pub strategy: Strategy,
}

impl TowerState {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn vertex_counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.polytope.vertex_count()).collect()
    }

    pub fn face_sizes(&self) -> Vec<Option<usize>> {
        self.levels.iter().map(|l| l.face_size).collect()
    }

    pub fn indices(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.index_over_base).collect()
    }
}

/// The data shared by `double` and `propagate_coloring`: which facet is
/// doubled and which neighbor merges across each boundary edge.
struct DoublePlan {
    face: usize,
    cycle: Vec<usize>,
    on_face: Vec<bool>,
    /// neighbor facet across cycle edge (w_i, w_{i+1})
    neighbors: Vec<usize>,
    /// output order, pass 1: facets != face, merged or first copy
    /// output order, pass 2: facets != face and not neighbors, mirror copy
    pass2: Vec<usize>,
}

fn plan_double(p: &Polytope, face: usize) -> Result<DoublePlan> {
    if p.dim() != 3 {
        return Err(Error::Dimension {
            expected: 3,
            actual: p.dim(),
        });
    }
    if face >= p.facet_count() {
        return Err(Error::UnknownFacet(face));
    }
    p.require_valid()?;
    let cycle = p.facets()[face].clone();
    let mut on_face = vec![false; p.vertex_count()];
    for &v in &cycle {
        on_face[v] = true;
    }
    let mut neighbors = Vec::with_capacity(cycle.len());
    for i in 0..cycle.len() {
        let a = cycle[i];
        let b = cycle[(i + 1) % cycle.len()];
        let e = p.edge_id(a, b).unwrap();
        let fs = p.edge_facet_ids(e);
        let other = if fs[0] == face { fs[1] } else { fs[0] };
        if other == face {
            return Err(Error::Double {
                facet: face,
                reason: "facet is glued to itself".into(),
            });
        }
        neighbors.push(other);
    }
    let mut sorted = neighbors.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Double {
            facet: face,
            reason: "a neighbor meets the facet along more than one edge".into(),
        });
    }
    let pass2 = (0..p.facet_count())
        .filter(|&f| f != face && !neighbors.contains(&f))
        .collect();
    Ok(DoublePlan {
        face,
        cycle,
        on_face,
        neighbors,
        pass2,
    })
}

fn apply_double(p: &Polytope, plan: &DoublePlan) -> Result<Polytope> {
    let v = p.vertex_count();
    let mirror = |x: usize| if plan.on_face[x] { x } else { v + x };
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for f in 0..p.facet_count() {
        if f == plan.face {
            continue;
        }
        match plan.neighbors.iter().position(|&g| g == f) {
            Some(i) => {
                // merge f with its mirror across cycle edge (w_i, w_{i+1})
                let w_a = plan.cycle[i];
                let w_b = plan.cycle[(i + 1) % plan.cycle.len()];
                let cyc = &p.facets()[f];
                let m = cyc.len();
                let j = (0..m)
                    .find(|&j| {
                        let (x, y) = (cyc[j], cyc[(j + 1) % m]);
                        (x == w_a && y == w_b) || (x == w_b && y == w_a)
                    })
                    .expect("shared edge present in neighbor cycle");
                // path from t = cyc[j+1] the long way around to s = cyc[j]
                let path: Vec<usize> = (0..m).map(|step| cyc[(j + 1 + step) % m]).collect();
                let mut merged = path.clone();
                merged.extend(path[1..m - 1].iter().rev().map(|&x| mirror(x)));
                faces.push(merged);
            }
            None => faces.push(p.facets()[f].clone()),
        }
    }
    for &f in &plan.pass2 {
        let mirrored: Vec<usize> = p.facets()[f].iter().rev().map(|&x| mirror(x)).collect();
        faces.push(mirrored);
    }
    // suppress the doubled facet's vertices, now of degree 2
    for cycle in &mut faces {
        cycle.retain(|&x| x >= v || !plan.on_face[x]);
    }
    // compact surviving vertex ids, originals first then mirrors
    let mut new_id = vec![usize::MAX; 2 * v];
    let mut next = 0;
    for x in 0..2 * v {
        let orig = x % v;
        if !plan.on_face[orig] {
            new_id[x] = next;
            next += 1;
        }
    }
    for cycle in &mut faces {
        for x in cycle.iter_mut() {
            *x = new_id[*x];
        }
    }
    Polytope::new(3, faces)
}

fn propagate_over_plan(p: &Polytope, plan: &DoublePlan, c: &Coloring) -> Result<Coloring> {
    let mut colors = Vec::with_capacity(2 * p.facet_count() - 2 - plan.cycle.len());
    for f in 0..p.facet_count() {
        if f != plan.face {
            colors.push(c.colors()[f]);
        }
    }
    for &f in &plan.pass2 {
        colors.push(c.colors()[f]);
    }
    Coloring::new(c.n(), colors)
}

/// Glue two copies of `p` along `face` and simplify, entirely
/// combinatorially. The result satisfies the doubling recurrences; it
/// is valid whenever every neighbor of `face` has more than 3 vertices
/// (a triangle neighbor would collapse to a 2-gon, which the next
/// validation rejects).
pub fn double(p: &Polytope, face: usize) -> Result<Polytope> {
    let plan = plan_double(p, face)?;
    apply_double(p, &plan)
}

/// Carry a characteristic coloring through a doubling: merged faces and
/// both copies of untouched faces keep their colors. The result is
/// checked to be characteristic on the doubled polytope.
pub fn propagate_coloring(p: &Polytope, c: &Coloring, face: usize) -> Result<Coloring> {
    cover::require_characteristic(p, c)?;
    let plan = plan_double(p, face)?;
    let doubled = apply_double(p, &plan)?;
    let colors = propagate_over_plan(p, &plan, c)?;
    cover::require_characteristic(&doubled, &colors)?;
    Ok(colors)
}

/// Build a tower of `depth` doublings from a seed and a characteristic
/// coloring. Every level is validated and keeps a characteristic
/// coloring; ties in the strategy break toward the smallest facet id.
pub fn build_tower(
    seed: &Polytope,
    coloring: &Coloring,
    strategy: Strategy,
    depth: usize,
) -> Result<TowerState> {
    if depth > 60 {
        return Err(Error::Overflow("tower index"));
    }
    seed.require_valid()?;
    cover::require_characteristic(seed, coloring)?;
    let mut levels: Vec<TowerLevel> = Vec::with_capacity(depth + 1);
    let mut polytope = seed.clone();
    let mut coloring = coloring.clone();
    for j in 0..=depth {
        let next_face = strategy.choose(&polytope, j);
        if j < depth && next_face.is_none() {
            return Err(Error::StrategyListTooShort {
                have: match &strategy {
                    Strategy::Explicit(list) => list.len(),
                    _ => unreachable!("built-in strategies always choose"),
                },
                depth,
            });
        }
        let face_size = next_face.map(|f| polytope.facets()[f].len());
        levels.push(TowerLevel {
            polytope: polytope.clone(),
            coloring: coloring.clone(),
            next_face,
            face_size,
            index_over_base: 1u64 << j,
        });
        if j == depth {
            break;
        }
        let face = next_face.unwrap();
        let plan = plan_double(&polytope, face)?;
        let doubled = apply_double(&polytope, &plan)?;
        let report = doubled.validate();
        if !report.ok() {
            return Err(Error::InvalidPolytope(format!(
                "doubling level {j} along facet {face} broke the polytope: {report}"
            )));
        }
        let propagated = propagate_over_plan(&polytope, &plan, &coloring)?;
        cover::require_characteristic(&doubled, &propagated)?;
        polytope = doubled;
        coloring = propagated;
    }
    Ok(TowerState { levels, strategy })
}
