//! Shared oracles for the integration suites. Everything in here is
//! deliberately independent of the library's search and linear-algebra
//! paths: brute-force permutation search, raw exhaustive scans, and
//! explicit group actions.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallcover::{Coloring, Polytope};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

pub fn random_relabel(rng: &mut ChaCha8Rng, p: &Polytope) -> Polytope {
    let vperm = random_permutation(rng, p.vertex_count());
    let fperm = random_permutation(rng, p.facet_count());
    p.relabel(&vperm, &fperm).unwrap()
}

/// Independence over GF(2) decided by scanning all nonzero subset XORs.
pub fn independent_subset_scan(colors: &[u8]) -> bool {
    for mask in 1u32..1 << colors.len() {
        let mut acc = 0u8;
        let mut m = mask;
        while m != 0 {
            acc ^= colors[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        if acc == 0 {
            return false;
        }
    }
    true
}

/// Raw characteristic test from first principles: all facets colored
/// nonzero and independent at every vertex.
pub fn characteristic_scan(p: &Polytope, colors: &[u8]) -> bool {
    let mut buf = [0u8; 8];
    (0..p.vertex_count()).all(|v| {
        let ids = p.vertex_facet_ids(v);
        for (i, &f) in ids.iter().enumerate() {
            buf[i] = colors[f];
        }
        independent_subset_scan(&buf[..ids.len()])
    })
}

/// Exhaustive (2^n - 1)^F scan counting characteristic colorings.
pub fn exhaustive_characteristic_count(p: &Polytope) -> u64 {
    let n = p.dim();
    let f = p.facet_count();
    let max = (1u8 << n) - 1;
    let mut colors = vec![1u8; f];
    let mut count = 0u64;
    loop {
        if characteristic_scan(p, &colors) {
            count += 1;
        }
        // odometer over 1..=max
        let mut i = 0;
        loop {
            if i == f {
                return count;
            }
            if colors[i] < max {
                colors[i] += 1;
                break;
            }
            colors[i] = 1;
            i += 1;
        }
    }
}

/// All facet permutations preserving face sizes, the shared-edge
/// adjacency relation, and inducing a bijection on vertices (identified
/// by their incident facet sets). Backtracking, no flags involved.
pub fn brute_force_automorphisms(p: &Polytope) -> Vec<Vec<usize>> {
    let f = p.facet_count();
    let sizes: Vec<usize> = p.facets().iter().map(|c| c.len()).collect();
    let mut adj = vec![vec![false; f]; f];
    if p.dim() == 2 {
        for i in 0..f {
            for j in i + 1..f {
                if p.facets()[i].iter().any(|v| p.facets()[j].contains(v)) {
                    adj[i][j] = true;
                    adj[j][i] = true;
                }
            }
        }
    } else {
        for e in p.edges() {
            let (a, b) = (e.facets[0], e.facets[1]);
            adj[a][b] = true;
            adj[b][a] = true;
        }
    }
    let vertex_keys: Vec<Vec<usize>> = (0..p.vertex_count())
        .map(|v| p.vertex_facet_ids(v).to_vec())
        .collect();
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; f];
    let mut used = vec![false; f];
    fn rec(
        i: usize,
        f: usize,
        sizes: &[usize],
        adj: &[Vec<bool>],
        vertex_keys: &[Vec<usize>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == f {
            // the induced vertex map must be a bijection on facet-set keys
            let mapped: Vec<Vec<usize>> = vertex_keys
                .iter()
                .map(|key| {
                    let mut m: Vec<usize> = key.iter().map(|&x| perm[x]).collect();
                    m.sort_unstable();
                    m
                })
                .collect();
            let mut sorted_mapped = mapped.clone();
            sorted_mapped.sort();
            let mut sorted_keys = vertex_keys.to_vec();
            sorted_keys.sort();
            if sorted_mapped == sorted_keys
                && mapped.iter().collect::<std::collections::BTreeSet<_>>().len() == mapped.len()
            {
                out.push(perm.clone());
            }
            return;
        }
        for t in 0..f {
            if used[t] || sizes[t] != sizes[i] {
                continue;
            }
            if (0..i).any(|j| adj[i][j] != adj[t][perm[j]]) {
                continue;
            }
            perm[i] = t;
            used[t] = true;
            rec(i + 1, f, sizes, adj, vertex_keys, perm, used, out);
            perm[i] = usize::MAX;
            used[t] = false;
        }
    }
    rec(0, f, &sizes, &adj, &vertex_keys, &mut perm, &mut used, &mut out);
    out
}

/// All invertible linear maps GF(2)^n -> GF(2)^n as basis-image rows:
/// `m[i]` is the image of e_{i+1}.
pub fn gl_matrices(n: usize) -> Vec<Vec<u8>> {
    let size = 1u8 << n;
    let mut out = Vec::new();
    let mut rows: Vec<u8> = Vec::new();
    fn spans(rows: &[u8]) -> Vec<u8> {
        let mut span = vec![0u8];
        for &r in rows {
            if !span.contains(&r) {
                let shifted: Vec<u8> = span.iter().map(|&s| s ^ r).collect();
                span.extend(shifted);
            }
        }
        span
    }
    fn rec(n: usize, size: u8, rows: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if rows.len() == n {
            out.push(rows.clone());
            return;
        }
        let span = spans(rows);
        for candidate in 1..size {
            if !span.contains(&candidate) {
                rows.push(candidate);
                rec(n, size, rows, out);
                rows.pop();
            }
        }
    }
    rec(n, size, &mut rows, &mut out);
    out
}

pub fn apply_gl(matrix: &[u8], color: u8) -> u8 {
    let mut out = 0u8;
    for (i, &row) in matrix.iter().enumerate() {
        if color >> i & 1 == 1 {
            out ^= row;
        }
    }
    out
}

/// `A o lambda o sigma^{-1}` on raw color vectors: new[sigma(f)] = A(old[f]).
pub fn act(colors: &[u8], sigma: &[usize], matrix: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; colors.len()];
    for (f, &c) in colors.iter().enumerate() {
        out[sigma[f]] = apply_gl(matrix, c);
    }
    out
}

/// Orbit count of a set of colorings under facet permutations x GL,
/// by union-find over the generator actions.
pub fn orbit_count(colorings: &[Vec<u8>], sigmas: &[Vec<usize>], matrices: &[Vec<u8>]) -> usize {
    let index: std::collections::HashMap<&Vec<u8>, usize> =
        colorings.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut parent: Vec<usize> = (0..colorings.len()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let identity_sigma: Vec<usize> = (0..colorings.first().map_or(0, |c| c.len())).collect();
    let identity_matrix: Vec<u8> = (0..8).map(|i| 1u8 << i).collect();
    for (i, coloring) in colorings.iter().enumerate() {
        for sigma in sigmas {
            let image = act(coloring, sigma, &identity_matrix[..matrices[0].len()]);
            let j = *index.get(&image).expect("action must preserve the set");
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            parent[ri] = rj;
        }
        for matrix in matrices {
            let image = act(coloring, &identity_sigma, matrix);
            let j = *index.get(&image).expect("action must preserve the set");
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            parent[ri] = rj;
        }
    }
    (0..colorings.len())
        .filter(|&i| find(&mut parent, i) == i)
        .count()
}

/// Pick a uniformly random element of an iterator's first `cap` items.
pub fn sample<T, I: Iterator<Item = T>>(rng: &mut ChaCha8Rng, iter: I, cap: usize) -> Option<T> {
    let items: Vec<T> = iter.take(cap).collect();
    if items.is_empty() {
        return None;
    }
    let i = rng.gen_range(0..items.len());
    items.into_iter().nth(i)
}

/// Sorted facet-color vectors of every characteristic coloring.
pub fn all_colorings(p: &Polytope) -> Vec<Coloring> {
    smallcover::cover::enumerate_characteristic(p).unwrap().collect()
}
