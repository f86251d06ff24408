//! Test oracles that share no code with the analysis path.
//!
//! The ribbon diagram is rebuilt as a 4-valent rotation system: each crossing
//! has four darts (X out, Y out, X in, Y in) in counterclockwise order, which
//! is `XOut, YOut, XIn, YIn` at a positive crossing and `XOut, YIn, XIn, YOut`
//! at a negative one. Faces are the cycles of `h -> rot(twin(h))`; the face of
//! a dart and the face of its twin lie on the two sides of the same edge.

#![allow(dead_code)]

use std::collections::BTreeMap;

use heegaard_core::permdata::PermutationDataSet;
use heegaard_core::presentation::Sign;

const X_OUT: usize = 0;
const Y_OUT: usize = 1;
const X_IN: usize = 2;
const Y_IN: usize = 3;

pub struct Faces {
    pub count: usize,
    face_of: Vec<usize>,
}

impl Faces {
    fn of(&self, point: usize, kind: usize) -> usize {
        self.face_of[(point - 1) * 4 + kind]
    }
}

fn twin(ds: &PermutationDataSet, point: usize, kind: usize) -> (usize, usize) {
    match kind {
        X_OUT => (ds.alpha().image(point), X_IN),
        X_IN => (ds.alpha().preimage(point), X_OUT),
        Y_OUT => (ds.beta().image(point), Y_IN),
        Y_IN => (ds.beta().preimage(point), Y_OUT),
        _ => unreachable!(),
    }
}

fn rotation(sign: Sign) -> [usize; 4] {
    match sign {
        Sign::Pos => [X_OUT, Y_OUT, X_IN, Y_IN],
        Sign::Neg => [X_OUT, Y_IN, X_IN, Y_OUT],
    }
}

fn rot_next(ds: &PermutationDataSet, point: usize, kind: usize) -> usize {
    let order = rotation(ds.sign(point));
    let pos = order.iter().position(|&k| k == kind).unwrap();
    order[(pos + 1) % 4]
}

pub fn faces(ds: &PermutationDataSet) -> Faces {
    let d = ds.degree();
    let mut face_of = vec![usize::MAX; 4 * d];
    let mut count = 0;
    for start in 0..4 * d {
        if face_of[start] != usize::MAX {
            continue;
        }
        let (mut p, mut k) = (start / 4 + 1, start % 4);
        while face_of[(p - 1) * 4 + k] == usize::MAX {
            face_of[(p - 1) * 4 + k] = count;
            let (q, kq) = twin(ds, p, k);
            p = q;
            k = rot_next(ds, q, kq);
        }
        count += 1;
    }
    Faces { count, face_of }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Genera of the components of `S - X` (`remove_x`) or `S - Y`, sorted,
/// counted from faces, glued edges and capped curve sides.
pub fn side_genera(ds: &PermutationDataSet, remove_x: bool) -> Vec<i64> {
    let f = faces(ds);
    let mut parent: Vec<usize> = (0..f.count).collect();
    let (glue_out, cut_out, cut_in, curves) = if remove_x {
        (Y_OUT, X_OUT, X_IN, ds.alpha())
    } else {
        (X_OUT, Y_OUT, Y_IN, ds.beta())
    };
    let d = ds.degree();
    for p in 1..=d {
        let (q, kq) = twin(ds, p, glue_out);
        let a = find(&mut parent, f.of(p, glue_out));
        let b = find(&mut parent, f.of(q, kq));
        parent[a] = b;
    }
    let mut euler: BTreeMap<usize, i64> = BTreeMap::new();
    for face in 0..f.count {
        *euler.entry(find(&mut parent, face)).or_default() += 1;
    }
    for p in 1..=d {
        *euler.get_mut(&find(&mut parent, f.of(p, glue_out))).unwrap() -= 1;
    }
    for cycle in curves.cycles() {
        let p = cycle[0];
        let left = find(&mut parent, f.of(p, cut_out));
        let (q, kq) = twin(ds, p, cut_out);
        debug_assert_eq!(kq, cut_in);
        let right = find(&mut parent, f.of(q, kq));
        *euler.get_mut(&left).unwrap() += 1;
        *euler.get_mut(&right).unwrap() += 1;
    }
    let mut genera: Vec<i64> = euler.values().map(|&chi| 1 - chi / 2).collect();
    assert!(
        euler.values().all(|chi| chi % 2 == 0),
        "oracle produced odd Euler characteristic"
    );
    genera.sort_unstable();
    genera
}

/// Brute-force count of elements generated from 1 under alpha and beta.
pub fn reachable_from_one(ds: &PermutationDataSet) -> usize {
    let mut seen = vec![false; ds.degree() + 1];
    seen[1] = true;
    loop {
        let mut changed = false;
        for p in 1..=ds.degree() {
            if seen[p] {
                for q in [ds.alpha().image(p), ds.beta().image(p)] {
                    if !seen[q] {
                        seen[q] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    seen.iter().filter(|&&s| s).count()
}
