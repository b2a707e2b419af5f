#![allow(dead_code)] // each test binary uses its own subset

//! Shared helpers for the integration suites: deterministic random
//! generators for twists, words, matrices over the function field, and
//! labeled genus-3 pants graphs.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use pochhammer::linalg::Matrix;
use pochhammer::pants::PantsGraph;
use pochhammer::ring::{Exponents, LaurentPoly, RationalFunction};
use pochhammer::words::{Letter, Presentation, Twist, Word};

pub fn random_twist(p: &Presentation, rank: usize, rng: &mut ChaCha8Rng) -> Twist {
    let rows: Vec<Vec<i64>> = (0..rank)
        .map(|_| {
            (0..p.generator_count())
                .map(|_| rng.gen_range(-3..=3))
                .collect()
        })
        .collect();
    Twist::from_matrix(p, rows).expect("any matrix kills commutator relators")
}

pub fn random_word(m: usize, max_len: usize, rng: &mut ChaCha8Rng) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| Letter {
            gen: rng.gen_range(0..m),
            inverse: rng.gen_bool(0.5),
        })
        .collect();
    Word::from_letters(letters)
}

/// A sparse entry of total degree at most 2 (Laurent exponents allowed).
pub fn random_entry(nvars: usize, rng: &mut ChaCha8Rng) -> RationalFunction {
    if rng.gen_bool(0.4) {
        return RationalFunction::zero(nvars);
    }
    let mut p = LaurentPoly::zero(nvars);
    let terms = rng.gen_range(1..=2);
    for _ in 0..terms {
        let exps = loop {
            let e = Exponents((0..nvars).map(|_| rng.gen_range(-1..=1)).collect());
            if e.total_degree().abs() <= 2 {
                break e;
            }
        };
        let c = BigRational::from_integer(BigInt::from(rng.gen_range(-3..=3i64)));
        p = &p + &LaurentPoly::monomial(nvars, exps, c);
    }
    RationalFunction::from_poly(p)
}

fn degree_one_entry(nvars: usize, rng: &mut ChaCha8Rng) -> RationalFunction {
    let mut p = LaurentPoly::zero(nvars);
    for _ in 0..rng.gen_range(1..=2) {
        let exps = Exponents((0..nvars).map(|_| rng.gen_range(0..=1)).collect());
        let exps = if exps.total_degree() > 1 {
            Exponents::zero(nvars)
        } else {
            exps
        };
        let c = BigRational::from_integer(BigInt::from(rng.gen_range(-2..=2i64)));
        p = &p + &LaurentPoly::monomial(nvars, exps, c);
    }
    RationalFunction::from_poly(p)
}

/// Random matrix over the field: either a sparse direct sample or a
/// structured low-rank product of degree-1 factors. Entries have total
/// degree at most 2.
pub fn random_matrix(max_dim: usize, nvars: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    if rng.gen_bool(0.5) {
        Matrix::from_fn(rows, cols, nvars, |_, _| random_entry(nvars, rng))
    } else {
        let inner = rng.gen_range(1..=rows.min(cols));
        let a = Matrix::from_fn(rows, inner, nvars, |_, _| degree_one_entry(nvars, rng));
        let b = Matrix::from_fn(inner, cols, nvars, |_, _| degree_one_entry(nvars, rng));
        a.matmul(&b)
    }
}

/// Random connected trivalent multigraph on the closed genus-3 surface with
/// labels consistent with the vertex sum-zero rule: non-tree curves get
/// random classes (zero with some probability, to exercise the fashion
/// algorithm) and tree curves are solved by flow conservation.
pub fn random_genus3_graph(rng: &mut ChaCha8Rng) -> PantsGraph {
    let genus = 3;
    let pants = 2 * genus - 2; // 4
    let curves = 3 * genus - 3; // 6
    let n = 2 * genus;
    loop {
        // Random perfect matching on the 3 * pants half-edge slots.
        let mut slots: Vec<usize> = (0..pants).flat_map(|v| [v, v, v]).collect();
        // Fisher-Yates with the deterministic rng.
        for i in (1..slots.len()).rev() {
            let j = rng.gen_range(0..=i);
            slots.swap(i, j);
        }
        let ends: Vec<(usize, usize)> = slots.chunks(2).map(|pair| (pair[0], pair[1])).collect();
        assert_eq!(ends.len(), curves);

        // Connectivity check.
        let mut seen = vec![false; pants];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &ends {
                let next = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        if !seen.iter().all(|&s| s) {
            continue;
        }

        // Spanning tree via DFS over curve indices.
        let mut tree = vec![false; curves];
        let mut visited = vec![false; pants];
        visited[0] = true;
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            for (ci, &(a, b)) in ends.iter().enumerate() {
                if tree[ci] || a == b {
                    continue;
                }
                let next = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !visited[next] {
                    visited[next] = true;
                    tree[ci] = true;
                    stack.push(next);
                }
            }
        }

        // Labels: free choices on non-tree curves, then solve the tree by
        // peeling leaves of the remaining system.
        let mut labels: Vec<Option<Vec<i64>>> = vec![None; curves];
        for ci in 0..curves {
            if !tree[ci] {
                let label: Vec<i64> = if rng.gen_bool(0.4) {
                    vec![0; n]
                } else {
                    (0..n).map(|_| rng.gen_range(-2..=2)).collect()
                };
                labels[ci] = Some(label);
            }
        }
        // All self-loops are non-tree (labeled above); the unsolved curves
        // form the spanning tree and are determined leaf-by-leaf. A vertex
        // with exactly one unsolved incident end fixes that curve's label
        // from the sum-zero rule; self-loops contribute nothing either way.
        let mut unsolved: Vec<usize> = (0..curves).filter(|&c| labels[c].is_none()).collect();
        while !unsolved.is_empty() {
            let mut progressed = false;
            'vertex: for v in 0..pants {
                let mut pending: Option<(usize, usize)> = None; // (curve, end)
                let mut sum = vec![0i64; n];
                for (ci, &(a, b)) in ends.iter().enumerate() {
                    if a == b {
                        continue;
                    }
                    for (end, p) in [(0usize, a), (1usize, b)] {
                        if p != v {
                            continue;
                        }
                        match &labels[ci] {
                            Some(l) => {
                                for (s, x) in sum.iter_mut().zip(l) {
                                    *s += if end == 0 { *x } else { -*x };
                                }
                            }
                            None => {
                                if pending.is_some() {
                                    continue 'vertex;
                                }
                                pending = Some((ci, end));
                            }
                        }
                    }
                }
                if let Some((ci, end)) = pending {
                    // end 0 carries the label, end 1 its negation.
                    let label: Vec<i64> = if end == 0 {
                        sum.iter().map(|s| -s).collect()
                    } else {
                        sum.clone()
                    };
                    labels[ci] = Some(label);
                    unsolved.retain(|&c| c != ci);
                    progressed = true;
                    break;
                }
            }
            assert!(progressed, "spanning-tree labels always peel off");
        }

        let mut pg = PantsGraph::new(genus, 0, pants);
        for (ci, &(a, b)) in ends.iter().enumerate() {
            pg.add_curve(a, b, labels[ci].clone().expect("all labels solved"), None);
        }
        if pg.validate().is_empty() {
            return pg;
        }
    }
}
