use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::map::{CombinatorialMap, MapMode};
use super::{realizable_signings, SignedGaussCode};
use crate::gauss::enumerate_words;

/// Plane closed curves with `n` double points up to the requested symmetries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedCurveCensus {
    pub n: usize,
    pub circle_oriented: bool,
    pub plane_oriented: bool,
    pub count: usize,
    /// One code per class with the dart that bounds the unbounded face.
    pub representatives: Vec<(SignedGaussCode, usize)>,
}

type Key = (Vec<usize>, (usize, usize));

fn canonical_key(
    map: &CombinatorialMap,
    outer_corners: &[(usize, usize)],
    circle_oriented: bool,
    plane_oriented: bool,
) -> Key {
    let mirror = map.mirror();
    let mut views = vec![map];
    if !plane_oriented {
        views.push(&mirror);
    }
    let mut best: Option<Key> = None;
    for view in views {
        for root in 0..view.dart_count() {
            if circle_oriented && root % 2 == 1 {
                continue;
            }
            let (table, label) = view.traversal_encoding(root);
            let corner = outer_corners
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (label[a], label[b]);
                    (x.min(y), x.max(y))
                })
                .min()
                .expect("every face has a corner");
            let key = (table, corner);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.expect("at least one root")
}

/// Counts immersed circles in the plane. Corners (pairs of rotation-adjacent
/// darts) identify the unbounded face independently of the mirror.
pub fn enumerate_closed_curves(n: usize, circle_oriented: bool, plane_oriented: bool) -> ClosedCurveCensus {
    if n == 0 {
        let code = SignedGaussCode::new(crate::gauss::GaussWord::empty(), vec![]).expect("empty code");
        return ClosedCurveCensus {
            n,
            circle_oriented,
            plane_oriented,
            count: 1,
            representatives: vec![(code, 0)],
        };
    }
    let found: Vec<(Key, (SignedGaussCode, usize))> = enumerate_words(n)
        .par_iter()
        .flat_map_iter(|w| {
            realizable_signings(w).into_iter().flat_map(move |code| {
                let map = code.map(MapMode::Closed);
                let (ids, count) = map.faces();
                (0..count)
                    .map(|f| {
                        let corners: Vec<(usize, usize)> = (0..map.dart_count())
                            .filter(|&d| ids[d] == f)
                            .map(|d| {
                                let e = map.alpha(d);
                                (e, map.sigma(e))
                            })
                            .collect();
                        let first = (0..map.dart_count()).find(|&d| ids[d] == f).unwrap();
                        let key = canonical_key(&map, &corners, circle_oriented, plane_oriented);
                        (key, (code.clone(), first))
                    })
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    let mut classes: BTreeMap<Key, (SignedGaussCode, usize)> = BTreeMap::new();
    for (k, v) in found {
        classes.entry(k).or_insert(v);
    }
    ClosedCurveCensus {
        n,
        circle_oriented,
        plane_oriented,
        count: classes.len(),
        representatives: classes.into_values().collect(),
    }
}
