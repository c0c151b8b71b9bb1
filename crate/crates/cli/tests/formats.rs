use blotto_cli::strategy::{parse_strategy, to_json};
use blotto_cli::sweep::{read_csv, write_csv, SweepRecord};
use blotto_cli::CliError;
use blotto_core::rational::rat;
use blotto_core::{AtomicStrategy, Rational};
use proptest::prelude::*;

const COMB_36: &str = r#"{
  "budget": "36",
  "atoms": [
    {"x": "0", "w": "1/3"},
    {"x": "14", "w": "1/3"},
    {"x": "28", "w": "1/3"}
  ]
}"#;

fn parse_err(text: &str) -> (String, String) {
    match parse_strategy(text, "input.json") {
        Err(CliError::Parse { context, message }) => (context, message),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn strategy_round_trip() {
    let f = parse_strategy(COMB_36, "comb").unwrap();
    assert_eq!(f.atoms().len(), 3);
    assert_eq!(f.mass_at(&rat(14, 1)), rat(1, 3));
    assert_eq!(parse_strategy(&to_json(&f), "again").unwrap(), f);
}

#[test]
fn weights_must_sum_to_one() {
    let text = r#"{
  "budget": "10",
  "atoms": [
    {"x": "0", "w": "1/2"},
    {"x": "5", "w": "2/5"}
  ]
}"#;
    let (context, message) = parse_err(text);
    assert!(message.contains("weights sum to 1"), "{message}");
    assert!(message.contains("9/10"), "{message}");
    assert_eq!(context, "input.json line 3");
}

#[test]
fn invariant_messages_name_the_rule() {
    let cases = [
        (
            r#"{"budget": "10", "atoms": [{"x": "11", "w": "1"}]}"#,
            "0 <= location <= budget",
        ),
        (
            r#"{"budget": "10", "atoms": [{"x": "5", "w": "1/2"}, {"x": "1", "w": "1/2"}]}"#,
            "strictly increasing",
        ),
        (
            r#"{"budget": "10", "atoms": [{"x": "1", "w": "0"}, {"x": "2", "w": "1"}]}"#,
            "weights > 0",
        ),
    ];
    for (text, rule) in cases {
        let (_, message) = parse_err(text);
        assert!(message.contains(rule), "{message} should name {rule}");
    }
}

#[test]
fn malformed_input_has_line_context() {
    let (context, _) =
        parse_err("{\n  \"budget\": \"10\",\n  \"atoms\": [\n    {\"x\": 1, \"w\": \"1\"}\n  ]\n}");
    assert_eq!(context, "input.json line 4");
    let (context, message) =
        parse_err("{\n  \"budget\": \"10\",\n  \"atoms\": [{\"x\": \"0.5\", \"w\": \"1\"}]\n}");
    assert_eq!(context, "input.json line 3");
    assert!(message.contains("0.5"));
    let (_, message) = parse_err(r#"{"budget": "10", "atoms": [], "extra": 1}"#);
    assert!(message.contains("extra"));
}

#[test]
fn csv_layout() {
    let records = vec![
        SweepRecord {
            b1: 0,
            lower_bound: rat(5, 6),
            centralized: rat(5, 6),
            in_band: true,
            band_k1: Some(1),
            comb_value: Some(rat(5, 6)),
        },
        SweepRecord {
            b1: 1,
            lower_bound: rat(4, 5),
            centralized: rat(5, 6),
            in_band: false,
            band_k1: None,
            comb_value: None,
        },
    ];
    let mut out = Vec::new();
    write_csv(&records, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert_eq!(
        text,
        "b1,lower_bound,centralized,in_band,band_k1,comb_value\n\
         0,5/6,5/6,true,1,5/6\n\
         1,4/5,5/6,false,,\n"
    );
    assert_eq!(read_csv(text.as_bytes()).unwrap(), records);

    let mut empty = Vec::new();
    write_csv(&[], &mut empty).unwrap();
    assert_eq!(
        String::from_utf8(empty).unwrap(),
        "b1,lower_bound,centralized,in_band,band_k1,comb_value\n"
    );
}

#[test]
fn emission_refuses_broken_records() {
    let base = SweepRecord {
        b1: 3,
        lower_bound: rat(4, 5),
        centralized: rat(5, 6),
        in_band: false,
        band_k1: None,
        comb_value: None,
    };
    let above = SweepRecord {
        lower_bound: rat(6, 7),
        ..base.clone()
    };
    let below_comb = SweepRecord {
        in_band: true,
        band_k1: Some(2),
        comb_value: Some(rat(5, 6)),
        ..base.clone()
    };
    let missing_comb = SweepRecord {
        in_band: true,
        band_k1: Some(2),
        ..base.clone()
    };
    for bad in [above, below_comb, missing_comb] {
        let mut sink = Vec::new();
        assert!(matches!(
            write_csv(&[bad], &mut sink),
            Err(CliError::Invariant(_))
        ));
    }
}

#[test]
fn csv_rejects_wrong_header() {
    assert!(read_csv("b1,lower,centralized,in_band,band_k1,comb_value\n".as_bytes()).is_err());
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (0i64..1000, 1i64..1000).prop_map(|(n, d)| rat(n, d))
}

fn arb_record() -> impl Strategy<Value = SweepRecord> {
    (
        0u64..100,
        arb_rational(),
        arb_rational(),
        any::<bool>(),
        1u64..7,
    )
        .prop_map(|(b1, x, y, in_band, k1)| {
            let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
            SweepRecord {
                b1,
                lower_bound: lo.clone(),
                centralized: hi,
                in_band,
                band_k1: in_band.then_some(k1),
                comb_value: in_band.then_some(lo),
            }
        })
}

proptest! {
    #[test]
    fn csv_round_trip(records in proptest::collection::vec(arb_record(), 0..20)) {
        let mut out = Vec::new();
        write_csv(&records, &mut out).unwrap();
        prop_assert_eq!(read_csv(out.as_slice()).unwrap(), records);
    }

    #[test]
    fn strategy_json_round_trip(
        budget in 1i64..100,
        raw in proptest::collection::btree_map(0i64..100, 1i64..50, 1..6),
    ) {
        let total: i64 = raw.values().sum();
        let atoms: Vec<_> = raw
            .iter()
            .filter(|(x, _)| **x <= budget)
            .map(|(&x, &w)| (rat(x, 1), rat(w, total)))
            .collect();
        prop_assume!(atoms.len() == raw.len());
        let f = AtomicStrategy::new(rat(budget, 1), atoms).unwrap();
        prop_assert_eq!(parse_strategy(&to_json(&f), "prop").unwrap(), f);
    }
}
