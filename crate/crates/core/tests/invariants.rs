mod common;

use common::naive_jones;
use parterre::invariants::{alexander, determinant, double_cover_homology, identify, jones, Invariants};
use parterre::{DtCode, IdentificationResult, KnotTable, LaurentPolynomial, PlanarDiagramCode};

const SOURCE: &str = include_str!("../../../data/knots_source.csv");

#[derive(serde::Deserialize)]
struct Published {
    name: String,
    dt: String,
    published_jones: String,
    published_alexander: String,
    published_determinant: String,
}

fn published() -> Vec<Published> {
    csv::Reader::from_reader(SOURCE.as_bytes()).deserialize().map(|r| r.unwrap()).collect()
}

/// Parses `min:c0,c1,...`.
fn poly(s: &str) -> LaurentPolynomial {
    let (min, cs) = s.split_once(':').unwrap();
    LaurentPolynomial::new(min.parse().unwrap(), cs.split(',').map(|c| c.parse::<i64>().unwrap()))
}

/// Equal up to a unit `±t^k`.
fn same_up_to_unit(a: &LaurentPolynomial, b: &LaurentPolynomial) -> bool {
    let shifted = b.shift(a.min_degree() - b.min_degree());
    shifted == *a || -&shifted == *a
}

fn pd(dt: &str) -> PlanarDiagramCode {
    PlanarDiagramCode::from_dt(&DtCode::parse(dt).unwrap()).unwrap()
}

#[test]
fn state_sum_oracle_knows_the_left_trefoil() {
    let left: PlanarDiagramCode = "X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]".parse().unwrap();
    assert_eq!(naive_jones(&left), poly("-4:-1,1,0,1"));
    assert_eq!(jones(&left).unwrap(), naive_jones(&left));
}

#[test]
fn computed_columns_match_published_ones() {
    let mut checked = 0;
    for row in published().iter().filter(|r| !r.published_jones.is_empty()) {
        let d = pd(&row.dt);
        let j = jones(&d).unwrap();
        let pj = poly(&row.published_jones);
        assert!(j == pj || j == pj.invert(), "{}: jones {j}", row.name);
        assert!(same_up_to_unit(&alexander(&d).unwrap(), &poly(&row.published_alexander)), "{}", row.name);
        assert_eq!(determinant(&d).unwrap().to_string(), row.published_determinant, "{}", row.name);
        checked += 1;
    }
    assert_eq!(checked, 21);
}

#[test]
fn bracket_agrees_with_state_sum() {
    for row in published().iter().filter(|r| r.dt.split_whitespace().count() <= 12) {
        let d = pd(&row.dt);
        assert_eq!(jones(&d).unwrap(), naive_jones(&d), "{}", row.name);
    }
}

#[test]
fn bundled_table_is_reproducible_from_source() {
    let rebuilt = KnotTable::from_source(SOURCE.as_bytes()).unwrap();
    assert_eq!(rebuilt.records, KnotTable::bundled().records);
    assert_eq!(rebuilt.records.len(), 35);
}

#[test]
fn determinant_is_alexander_at_minus_one() {
    let table = KnotTable::bundled();
    for name in ["10_99", "10_123", "12n706", "14n9732"] {
        let r = table.get(name).unwrap();
        assert_eq!(r.alexander.eval_minus_one().magnitude().to_string(), r.determinant.to_string());
        assert!(r.alexander.is_symmetric());
        assert_eq!(r.jones, r.jones.invert(), "{name} is amphicheiral");
    }
}

#[test]
fn homology_refines_the_determinant() {
    let cases: [(&str, &[u64]); 4] =
        [("4 6 2", &[3]), ("6 10 12 14 4 2 8", &[15]), ("8 10 12 14 16 18 20 2 4 6", &[11, 11]), ("4 6 8 2", &[5])];
    for (dt, want) in cases {
        let d = pd(dt);
        let h = double_cover_homology(&d).unwrap();
        assert_eq!(h, want, "{dt}");
        assert_eq!(h.iter().product::<u64>(), determinant(&d).unwrap());
    }
}

#[test]
fn identification_of_named_and_composite_knots() {
    let table = KnotTable::bundled();
    let inv = Invariants::of(&pd("6 10 18 14 2 16 20 8 4 12")).unwrap();
    assert_eq!(identify(&inv, &table).prime_name(), Some("10_99"));

    // Two trefoils one after the other along the strand.
    let square = pd("4 6 2 10 12 8");
    match identify(&Invariants::of(&square).unwrap(), &table) {
        IdentificationResult::MatchedComposite(names) => assert_eq!(names.len(), 2),
        other => panic!("expected a composite, got {other}"),
    }
    let unknot = pd("4 -6 2");
    assert_eq!(identify(&Invariants::of(&unknot).unwrap(), &table), IdentificationResult::Trivial);
}
