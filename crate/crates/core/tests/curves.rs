use std::collections::BTreeMap;

use parterre::curves::{curve_stats, enumerate_closed_curves, enumerate_long_curves, filtered_curves};
use parterre::{DtCode, MapMode, SignedGaussCode};

/// (DT, m1, m2, m3) for every four-crossing code.
const TABLE: [(&str, usize, usize, usize); 24] = [
    ("2468", 16, 16, 8),
    ("2486", 16, 8, 4),
    ("2648", 16, 8, 4),
    ("2684", 4, 4, 2),
    ("2846", 16, 4, 2),
    ("2864", 16, 4, 2),
    ("4268", 16, 8, 4),
    ("4286", 16, 4, 2),
    ("4628", 4, 4, 2),
    ("4682", 2, 2, 1),
    ("4826", 4, 0, 0),
    ("4862", 4, 4, 2),
    ("6248", 16, 4, 2),
    ("6284", 4, 0, 0),
    ("6428", 16, 4, 2),
    ("6482", 4, 4, 2),
    ("6824", 2, 2, 1),
    ("6842", 4, 4, 2),
    ("8246", 16, 2, 1),
    ("8264", 16, 2, 1),
    ("8426", 16, 2, 1),
    ("8462", 16, 2, 1),
    ("8624", 4, 4, 2),
    ("8642", 16, 2, 1),
];

#[test]
fn long_curve_counts() {
    let counts: Vec<usize> = (0..=4).map(|n| enumerate_long_curves(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 8, 42, 260]);
}

#[test]
fn closed_curve_counts() {
    let counts: Vec<usize> = (0..=5).map(|n| enumerate_closed_curves(n, false, false).count).collect();
    assert_eq!(counts, vec![1, 2, 5, 20, 82, 435]);
    assert_eq!(enumerate_closed_curves(3, false, true).count, 21);
}

#[test]
fn count_table_for_four_crossings() {
    let stats = curve_stats(4);
    let got: BTreeMap<String, (usize, usize, usize)> =
        stats.iter().map(|s| (s.dt.to_string(), (s.m1, s.m2, s.m3))).collect();
    let want: BTreeMap<String, (usize, usize, usize)> =
        TABLE.iter().map(|&(dt, a, b, c)| (dt.to_string(), (a, b, c))).collect();
    assert_eq!(got, want);
    let sums = TABLE.iter().fold((0, 0, 0), |s, r| (s.0 + r.1, s.1 + r.2, s.2 + r.3));
    assert_eq!(sums, (260, 98, 49));
}

#[test]
fn irreducible_codes_and_split_rule() {
    let mut irreducible = Vec::new();
    for (dt, m1, _, _) in TABLE {
        let parts = DtCode::parse(dt).unwrap().to_word().irreducible_parts();
        if parts == 1 {
            irreducible.push(dt);
        }
        let expected = match parts {
            1 => 2,
            2 => 4,
            _ => 16,
        };
        assert_eq!(m1, expected, "{dt} has {parts} parts");
        assert!([2, 4, 16].contains(&m1));
    }
    assert_eq!(irreducible, vec!["4682", "6824"]);
}

#[test]
fn filtered_selection() {
    let counts: Vec<usize> = (2..=4).map(|n| filtered_curves(n).len()).collect();
    assert_eq!(counts, vec![3, 11, 49]);
    // One representative per region-swap pair, never both.
    for n in 2..=4 {
        let kept = filtered_curves(n);
        for c in &kept {
            assert!(!c.has_interior_curl());
            let swapped = c.swap_regions();
            assert!(swapped.key() == c.key() || !kept.iter().any(|k| k.key() == swapped.key()));
        }
    }
}

#[test]
fn two_curls_bound_four_faces() {
    let code: SignedGaussCode = SignedGaussCode::parse("aabb:++").unwrap();
    let map = code.map(MapMode::Closed);
    assert!(map.is_planar());
    // V - E + F = 2 with V = 2 and E = 4.
    assert_eq!((map.vertex_count(), map.edge_count()), (2, 4));
    assert_eq!(map.face_count(), 4);
}

#[test]
fn single_curl_is_planar_either_way() {
    for s in ["aa:+", "aa:-"] {
        let code = SignedGaussCode::parse(s).unwrap();
        let map = code.map(MapMode::Closed);
        assert_eq!(map.face_count(), 3);
        assert_eq!(map.genus(), 0);
    }
}
