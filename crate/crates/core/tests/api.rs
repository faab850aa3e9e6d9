use proptest::prelude::*;

use qrat::knots::{iota_record, IotaRecord};
use qrat::qmod::{recognize, word_eval_one, word_to_matrix, GenWord};
use qrat::qrat::{left_qrat, right_qrat, QRational, Route};
use qrat::quivers::{closure, Quiver, QuiverSpec};
use qrat::Fraction;

#[test]
fn records_round_trip_through_json() {
    let rec = iota_record("15/4".parse().unwrap()).unwrap();
    let text = serde_json::to_string(&rec).unwrap();
    assert_eq!(serde_json::from_str::<IotaRecord>(&text).unwrap(), rec);

    let q = right_qrat("-7/3".parse().unwrap(), Route::RegularCf).unwrap();
    let text = serde_json::to_string(&q).unwrap();
    assert_eq!(serde_json::from_str::<QRational>(&text).unwrap(), q);

    let quiver = "fence:2,1,3".parse::<QuiverSpec>().unwrap().build().unwrap();
    let back: Quiver = serde_json::from_str(&serde_json::to_string(&quiver).unwrap()).unwrap();
    assert!(back.same_arrows(&quiver));
    assert_eq!(closure(&back).unwrap(), closure(&quiver).unwrap());
}

#[test]
fn text_forms_round_trip() {
    for s in ["fence:1,2,3", "flat:1,2,0", "circ:1,2,1,2", "edges:3;0>1,1>2"] {
        assert_eq!(s.parse::<QuiverSpec>().unwrap().to_string(), s);
    }
    for s in ["1", "R^2 L^-1 S", "S R^3"] {
        assert_eq!(s.parse::<GenWord>().unwrap().to_string(), s);
    }
}

proptest! {
    #[test]
    fn both_sides_specialize_to_the_fraction(r in -60i64..60, s in 1i64..30) {
        let x = Fraction::new(r, s).unwrap();
        for q in [right_qrat(x, Route::RegularCf).unwrap(), left_qrat(x, Route::RegularCf).unwrap()] {
            let (n, d) = (q.num.eval_one().unwrap(), q.den.eval_one().unwrap());
            prop_assert_eq!(n * x.denom(), d * x.numer());
        }
    }

    #[test]
    fn recognized_words_rebuild_the_matrix(a in -9i64..9, b in -9i64..9, c in -9i64..9) {
        prop_assume!(a != 0 || c != 0);
        // any primitive column (a, c) extends to an SL(2,Z) matrix
        let g = gcd(a, c);
        prop_assume!(g == 1);
        let (x, y) = bezout(a, c);
        let m = [[a, -y + b * a], [c, x + b * c]];
        let w = recognize(m).unwrap();
        let back = word_eval_one(&w).unwrap();
        let neg = [[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]];
        prop_assert!(back == m || back == neg, "{w} -> {back:?}, want {m:?}");
        let full = word_to_matrix(&w).unwrap().eval_one().unwrap();
        prop_assert_eq!(full, back);
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// (x, y) with a*x + c*y = 1, assuming gcd 1.
fn bezout(a: i64, c: i64) -> (i64, i64) {
    if c == 0 {
        return (a.signum(), 0);
    }
    let (x, y) = bezout(c, a.rem_euclid(c));
    (y, x - a.div_euclid(c) * y)
}
