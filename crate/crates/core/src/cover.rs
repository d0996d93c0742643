//! Characteristic colorings of facets, i.e. small covers.
//!
//! A coloring assigns a nonzero vector of GF(2)^n to every facet; it is
//! characteristic when the n colors meeting at each vertex are linearly
//! independent. Enumeration is a backtracking search over facets in id
//! order with per-vertex independence pruning; classification counts
//! orbits under the combined action of the polytope's automorphisms and
//! GL(n, 2) by canonicalizing every coloring.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::polytope::Polytope;

/// Facet coloring by nonzero GF(2)^n vectors, encoded 1..2^n-1 with
/// `e_i = 1 << (i-1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coloring {
    n: usize,
    colors: Vec<u8>,
}

impl Coloring {
    pub fn new(n: usize, colors: Vec<u8>) -> Result<Coloring> {
        if n == 0 || n > 7 {
            return Err(Error::Domain(format!("coloring dimension {n} out of range 1..=7")));
        }
        let max = (1u8 << n) - 1;
        for (facet, &c) in colors.iter().enumerate() {
            if c == 0 || c > max {
                return Err(Error::ColorOutOfRange { facet, color: c, max });
            }
        }
        Ok(Coloring { n, colors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn color(&self, facet: usize) -> Result<u8> {
        self.colors
            .get(facet)
            .copied()
            .ok_or(Error::UnknownFacet(facet))
    }

    pub fn facet_count(&self) -> usize {
        self.colors.len()
    }

    /// Parse `facet_id: bitvector` lines, e.g. `0: 101`. The bit string
    /// lists the coordinates left to right, so `100` is e_1. `#` starts
    /// a comment.
    pub fn parse(text: &str) -> Result<Coloring> {
        let mut entries: Vec<(usize, u8, usize)> = Vec::new();
        let mut n: Option<usize> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let content = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            let (id_part, bits_part) = trimmed.split_once(':').ok_or_else(|| Error::Syntax {
                line: line_no,
                col: 1,
                msg: "expected `<facet>: <bits>`".into(),
            })?;
            let id: usize = id_part.trim().parse().map_err(|_| Error::Syntax {
                line: line_no,
                col: 1,
                msg: format!("invalid facet id `{}`", id_part.trim()),
            })?;
            let bits = bits_part.trim();
            if bits.is_empty() || !bits.chars().all(|c| c == '0' || c == '1') {
                return Err(Error::Syntax {
                    line: line_no,
                    col: 1,
                    msg: format!("invalid bit vector `{bits}`"),
                });
            }
            match n {
                None => n = Some(bits.len()),
                Some(k) if k != bits.len() => {
                    return Err(Error::Syntax {
                        line: line_no,
                        col: 1,
                        msg: format!("bit vector length {} differs from {}", bits.len(), k),
                    })
                }
                _ => {}
            }
            let mut code = 0u8;
            for (i, ch) in bits.chars().enumerate() {
                if ch == '1' {
                    code |= 1 << i;
                }
            }
            if entries.iter().any(|&(other, _, _)| other == id) {
                return Err(Error::DuplicateFacetId { id, line: line_no });
            }
            entries.push((id, code, line_no));
        }
        let n = n.ok_or_else(|| Error::Syntax {
            line: 1,
            col: 1,
            msg: "empty coloring".into(),
        })?;
        entries.sort_by_key(|&(id, _, _)| id);
        for (want, &(id, _, _)) in entries.iter().enumerate() {
            if id != want {
                return Err(Error::FacetIdGap { missing: want });
            }
        }
        Coloring::new(n, entries.into_iter().map(|(_, c, _)| c).collect())
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (id, &c) in self.colors.iter().enumerate() {
            out.push_str(&format!("{id}: {}\n", code_to_bits(c, self.n)));
        }
        out
    }
}

/// Render a color code as its bit string, coordinate 1 first.
pub fn code_to_bits(code: u8, n: usize) -> String {
    (0..n).map(|i| if code >> i & 1 == 1 { '1' } else { '0' }).collect()
}

/// True iff the given nonzero vectors are linearly independent over GF(2).
fn independent(colors: &[u8]) -> bool {
    let mut span: u128 = 1; // bitmask of spanned elements, starting at {0}
    for &c in colors {
        if span >> c & 1 == 1 {
            return false;
        }
        span |= xor_translate(span, c);
    }
    true
}

/// `{ s ^ c : s in set }` for a bitmask-encoded subset of GF(2)^n.
fn xor_translate(set: u128, c: u8) -> u128 {
    let mut out = 0u128;
    let mut rest = set;
    while rest != 0 {
        let b = rest.trailing_zeros() as u8;
        rest &= rest - 1;
        out |= 1u128 << (b ^ c);
    }
    out
}

fn check_compatible(p: &Polytope, c: &Coloring) -> Result<()> {
    if c.n() != p.dim() {
        return Err(Error::ColoringDimension {
            coloring: c.n(),
            polytope: p.dim(),
        });
    }
    if c.facet_count() != p.facet_count() {
        return Err(Error::MissingFacetColor {
            assigned: c.facet_count(),
            expected: p.facet_count(),
        });
    }
    Ok(())
}

/// True iff at every vertex the colors of its incident facets are
/// linearly independent over GF(2).
pub fn is_characteristic(p: &Polytope, c: &Coloring) -> Result<bool> {
    check_compatible(p, c)?;
    Ok(first_dependent_vertex(p, c).is_none())
}

fn first_dependent_vertex(p: &Polytope, c: &Coloring) -> Option<usize> {
    (0..p.vertex_count()).find(|&v| {
        let colors: Vec<u8> = p
            .vertex_facet_ids(v)
            .iter()
            .map(|&f| c.colors[f])
            .collect();
        !independent(&colors)
    })
}

pub(crate) fn require_characteristic(p: &Polytope, c: &Coloring) -> Result<()> {
    check_compatible(p, c)?;
    match first_dependent_vertex(p, c) {
        None => Ok(()),
        Some(vertex) => Err(Error::NotCharacteristic { vertex }),
    }
}

/// Lazy backtracking enumeration of characteristic colorings, facets in
/// id order, colors ascending; each coloring is emitted exactly once.
pub struct CharacteristicColorings<'a> {
    polytope: &'a Polytope,
    n: usize,
    max_color: u8,
    fixed: Vec<Option<u8>>,
    colors: Vec<u8>,
    pos: usize,
    done: bool,
}

impl<'a> CharacteristicColorings<'a> {
    fn new(polytope: &'a Polytope, fixed: Vec<Option<u8>>) -> Self {
        let n = polytope.dim();
        let f = polytope.facet_count();
        CharacteristicColorings {
            polytope,
            n,
            max_color: (1u8 << n) - 1,
            fixed,
            colors: vec![0; f],
            pos: 0,
            done: f == 0,
        }
    }

    /// The colors assigned so far stay independent at every vertex of
    /// facet `pos`, looking only at facets with id <= pos.
    fn consistent_at(&self, pos: usize) -> bool {
        let facet = &self.polytope.facets()[pos];
        facet.iter().all(|&v| {
            let assigned: Vec<u8> = self
                .polytope
                .vertex_facet_ids(v)
                .iter()
                .filter(|&&g| g <= pos)
                .map(|&g| self.colors[g])
                .collect();
            independent(&assigned)
        })
    }
}

impl Iterator for CharacteristicColorings<'_> {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        if self.done {
            return None;
        }
        let f = self.polytope.facet_count();
        loop {
            if self.pos == f {
                let item = Coloring {
                    n: self.n,
                    colors: self.colors.clone(),
                };
                self.pos = f - 1; // resume by advancing the last facet
                return Some(item);
            }
            let start = self.colors[self.pos] + 1;
            let mut placed = false;
            for c in start..=self.max_color {
                if let Some(fc) = self.fixed[self.pos] {
                    if c != fc {
                        continue;
                    }
                }
                self.colors[self.pos] = c;
                if self.consistent_at(self.pos) {
                    placed = true;
                    break;
                }
            }
            if placed {
                self.pos += 1;
                if self.pos < f {
                    self.colors[self.pos] = 0;
                }
            } else if self.pos == 0 {
                self.done = true;
                return None;
            } else {
                self.colors[self.pos] = 0;
                self.pos -= 1;
            }
        }
    }
}

/// Stream every characteristic coloring of a validated polytope.
pub fn enumerate_characteristic(p: &Polytope) -> Result<CharacteristicColorings<'_>> {
    p.require_valid()?;
    let fixed = vec![None; p.facet_count()];
    Ok(CharacteristicColorings::new(p, fixed))
}

/// Symmetry-reduced stream: the n facets at vertex 0 are pinned to the
/// standard basis e_1..e_n. Every GL(n, 2)-orbit of characteristic
/// colorings contains exactly one such coloring (the base colors form a
/// basis, so the normalizing matrix is unique), hence the full count is
/// this count times |GL(n, 2)|.
pub fn enumerate_gl_fixed(p: &Polytope) -> Result<CharacteristicColorings<'_>> {
    p.require_valid()?;
    let mut fixed = vec![None; p.facet_count()];
    for (i, &f) in p.vertex_facet_ids(0).iter().enumerate() {
        fixed[f] = Some(1u8 << i);
    }
    Ok(CharacteristicColorings::new(p, fixed))
}

/// Order of GL(n, 2): product of (2^n - 2^i).
pub fn gl_order(n: usize) -> u64 {
    (0..n).map(|i| (1u64 << n) - (1u64 << i)).product()
}

/// Lexicographically least image of the color sequence under GL(n, 2),
/// computed greedily: each color already in the span of earlier ones has
/// a forced image, otherwise it is sent to the smallest vector outside
/// the span of the images chosen so far.
pub fn gl_canonical(seq: &[u8], n: usize) -> Vec<u8> {
    let size = 1usize << n;
    let mut image = vec![u8::MAX; size];
    image[0] = 0;
    let mut used_span: u128 = 1;
    let mut out = Vec::with_capacity(seq.len());
    for &c in seq {
        if image[c as usize] != u8::MAX {
            out.push(image[c as usize]);
            continue;
        }
        let d = (1..size as u8).find(|&d| used_span >> d & 1 == 0).unwrap();
        let assigned: Vec<usize> = (0..size).filter(|&s| image[s] != u8::MAX).collect();
        for s in assigned {
            image[s ^ c as usize] = image[s] ^ d;
        }
        used_span |= xor_translate(used_span, d);
        out.push(d);
    }
    out
}

/// Orbit count of characteristic colorings under automorphisms of the
/// polytope combined with GL(n, 2) on colors.
#[derive(Clone, Debug)]
pub struct CoverClassification {
    pub total_count: u64,
    pub class_count: usize,
    /// Lexicographically least coloring of each orbit, sorted.
    pub representatives: Vec<Coloring>,
    /// Order of the acting group Aut(P) x GL(n, 2).
    pub group_order_used: u64,
}

/// Classify characteristic colorings up to `(sigma, A) . lambda =
/// A o lambda o sigma^{-1}`. The search is pruned to one coloring per
/// GL-orbit (basis pinned at vertex 0) and each orbit is identified by
/// the minimum over automorphisms of the GL-canonical form.
pub fn equivalence_classes(p: &Polytope) -> Result<CoverClassification> {
    let n = p.dim();
    let auts = p.automorphism_group()?;
    let mut canon: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut fixed_count: u64 = 0;
    let f = p.facet_count();
    for coloring in enumerate_gl_fixed(p)? {
        fixed_count += 1;
        let mut best: Option<Vec<u8>> = None;
        let mut relabeled = vec![0u8; f];
        for aut in &auts {
            for (i, &c) in coloring.colors.iter().enumerate() {
                relabeled[aut.facets[i]] = c;
            }
            let candidate = gl_canonical(&relabeled, n);
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
        canon.insert(best.unwrap());
    }
    let representatives: Vec<Coloring> = canon
        .iter()
        .map(|colors| Coloring::new(n, colors.clone()))
        .collect::<Result<_>>()?;
    Ok(CoverClassification {
        total_count: fixed_count * gl_order(n),
        class_count: representatives.len(),
        representatives,
        group_order_used: auts.len() as u64 * gl_order(n),
    })
}

/// True iff some homomorphism GF(2)^n -> {±1} sends every facet color
/// to -1; equivalently some w has odd pairing with every color.
pub fn is_orientable(c: &Coloring) -> bool {
    let max = (1u16 << c.n) - 1;
    (1..=max).any(|w| {
        c.colors
            .iter()
            .all(|&col| (w & col as u16).count_ones() % 2 == 1)
    })
}

/// First orientable characteristic coloring in enumeration order.
pub fn find_orientable(p: &Polytope) -> Result<Option<Coloring>> {
    Ok(enumerate_characteristic(p)?.find(is_orientable))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{builtin, polygon};

    fn cube_t3() -> Coloring {
        // opposite pairs of the builtin cube: (0,1) x, (2,3) y, (4,5) z
        Coloring::new(3, vec![1, 1, 2, 2, 4, 4]).unwrap()
    }

    #[test]
    fn characteristic_examples() {
        let cube = builtin("cube").unwrap();
        assert!(is_characteristic(&cube, &cube_t3()).unwrap());
        let all_e1 = Coloring::new(3, vec![1; 6]).unwrap();
        assert!(!is_characteristic(&cube, &all_e1).unwrap());
        let square = builtin("square").unwrap();
        let klein = Coloring::new(2, vec![1, 2, 3, 2]).unwrap();
        assert!(is_characteristic(&square, &klein).unwrap());
    }

    #[test]
    fn characteristic_errors() {
        let cube = builtin("cube").unwrap();
        let short = Coloring::new(3, vec![1, 2, 4]).unwrap();
        assert!(matches!(
            is_characteristic(&cube, &short),
            Err(Error::MissingFacetColor { assigned: 3, expected: 6 })
        ));
        let wrong_dim = Coloring::new(2, vec![1, 2, 3, 1, 2, 3]).unwrap();
        assert!(matches!(
            is_characteristic(&cube, &wrong_dim),
            Err(Error::ColoringDimension { coloring: 2, polytope: 3 })
        ));
    }

    #[test]
    fn enumeration_counts_small_polygons() {
        // proper 3-colorings of a k-cycle: (3-1)^k + (-1)^k (3-1)
        assert_eq!(enumerate_characteristic(&polygon(4).unwrap()).unwrap().count(), 18);
        assert_eq!(enumerate_characteristic(&polygon(3).unwrap()).unwrap().count(), 6);
        assert_eq!(enumerate_characteristic(&polygon(5).unwrap()).unwrap().count(), 30);
    }

    #[test]
    fn enumeration_is_sorted_and_unique() {
        let square = builtin("square").unwrap();
        let all: Vec<Coloring> = enumerate_characteristic(&square).unwrap().collect();
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(all, sorted);
    }

    #[test]
    fn gl_fixed_times_group_order_matches_full_count() {
        for name in ["square", "pentagon", "cube"] {
            let p = builtin(name).unwrap();
            let full = enumerate_characteristic(&p).unwrap().count() as u64;
            let fixed = enumerate_gl_fixed(&p).unwrap().count() as u64;
            assert_eq!(full, fixed * gl_order(p.dim()), "{name}");
        }
    }

    #[test]
    fn classification_counts() {
        let square = builtin("square").unwrap();
        let cls = equivalence_classes(&square).unwrap();
        assert_eq!(cls.total_count, 18);
        assert_eq!(cls.class_count, 2);
        assert_eq!(cls.group_order_used, 8 * 6);

        let triangle = polygon(3).unwrap();
        let cls = equivalence_classes(&triangle).unwrap();
        assert_eq!(cls.total_count, 6);
        assert_eq!(cls.class_count, 1);
    }

    #[test]
    fn orientability_examples() {
        assert!(is_orientable(&cube_t3()));
        let klein = Coloring::new(2, vec![1, 2, 3, 2]).unwrap();
        assert!(!is_orientable(&klein));
        let torus = Coloring::new(2, vec![1, 2, 1, 2]).unwrap();
        assert!(is_orientable(&torus));
    }

    #[test]
    fn find_orientable_square_is_torus_like() {
        let square = builtin("square").unwrap();
        let c = find_orientable(&square).unwrap().unwrap();
        assert!(is_orientable(&c));
        assert!(is_characteristic(&square, &c).unwrap());
    }

    #[test]
    fn coloring_round_trip_and_errors() {
        let c = cube_t3();
        assert_eq!(Coloring::parse(&c.serialize()).unwrap(), c);
        assert_eq!(c.serialize().lines().next().unwrap(), "0: 100");
        assert!(matches!(
            Coloring::parse("0: 000\n"),
            Err(Error::ColorOutOfRange { .. })
        ));
        assert!(matches!(
            Coloring::parse("0: 10\n2: 01\n"),
            Err(Error::FacetIdGap { missing: 1 })
        ));
        assert!(Coloring::parse("0: 10\n0: 01\n").is_err());
        assert!(Coloring::parse("junk\n").is_err());
    }

    #[test]
    fn gl_canonical_is_idempotent_and_minimal() {
        let seq = vec![5u8, 3, 6, 5];
        let canon = gl_canonical(&seq, 3);
        assert_eq!(gl_canonical(&canon, 3), canon);
        // canonical form starts with the smallest nonzero vector
        assert_eq!(canon[0], 1);
        // repeated inputs stay repeated
        assert_eq!(canon[0], canon[3]);
    }
}
