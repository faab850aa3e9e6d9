//! Browser bindings. Every export takes a short text input and returns a JSON
//! string; failures come back as `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use qrat::fractions::regular_cf;
use qrat::knots::iota_record;
use qrat::qmod::{canonical_trace, reduce_trace_type, word_to_matrix};
use qrat::qrat::{left_qrat, right_qrat, Route};
use qrat::quivers::{closure, closure_table, QuiverSpec};
use qrat::{Fraction, GenWord, LaurentPoly, Result};

fn poly(p: &LaurentPoly) -> Value {
    json!({"text": p.to_string(), "lowest_exp": p.lowest_exp(), "coeffs": p.coeffs()})
}

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({"error": e.to_string()}).to_string(),
    }
}

fn parse<T: std::str::FromStr<Err = qrat::Error>>(s: &str) -> Result<T> {
    s.trim().parse()
}

/// Both q-deformations of `frac`, plus J and I when `frac > 1`.
#[wasm_bindgen]
pub fn fraction_summary(frac: &str) -> String {
    respond((|| {
        let x: Fraction = parse(frac)?;
        let right = right_qrat(x, Route::RegularCf)?;
        let left = left_qrat(x, Route::RegularCf)?;
        let mut out = json!({
            "fraction": x.to_string(),
            "cf": regular_cf(x).terms,
            "right": {"num": poly(&right.num), "den": poly(&right.den)},
            "left": {"num": poly(&left.num), "den": poly(&left.den)},
        });
        if x.numer() > x.denom() && x.denom() > 0 {
            let rec = iota_record(x)?;
            out["jones"] = poly(&rec.j);
            out["iota"] = poly(&rec.i);
            out["modality"] = json!(rec.modality);
            out["exception"] = json!(rec.exception.to_string());
        }
        Ok(out)
    })())
}

/// Closure polynomial, closure table (1-based vertices) and drawing data.
#[wasm_bindgen]
pub fn quiver_closures(spec: &str) -> String {
    respond((|| {
        let s: QuiverSpec = parse(spec)?;
        let q = s.build()?;
        let table = closure_table(&q)?;
        let rows: Vec<Value> = table
            .iter()
            .enumerate()
            .map(|(l, sets)| {
                let sets: Vec<Vec<usize>> = sets.iter().map(|v| v.iter().map(|i| i + 1).collect()).collect();
                json!({"l": l, "count": sets.len(), "closures": sets})
            })
            .collect();
        let arrows: Vec<[usize; 2]> = q.arrows.iter().map(|&(a, b)| [a + 1, b + 1]).collect();
        Ok(json!({
            "quiver": s.to_string(),
            "vertices": q.n_vertices,
            "arrows": arrows,
            "cyclic": q.layout.as_ref().is_some_and(|l| l.cyclic),
            "closure": poly(&closure(&q)?),
            "table": rows,
        }))
    })())
}

/// Matrix of a generator word with its trace and trace type.
#[wasm_bindgen]
pub fn word_matrix(word: &str) -> String {
    respond((|| {
        let w: GenWord = parse(word)?;
        let m = word_to_matrix(&w)?;
        let [[a, b], [c, d]] = &m.entries;
        Ok(json!({
            "word": w.to_string(),
            "entries": [[poly(a), poly(b)], [poly(c), poly(d)]],
            "trace": poly(&m.trace()?),
            "canonical_trace": poly(&canonical_trace(&m)?),
            "trace_type": reduce_trace_type(&m)?.to_string(),
        }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn get(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn summary_of_twelve_fifths() {
        let v = get(fraction_summary("12/5"));
        assert_eq!(v["iota"]["text"], "1 + q^3");
        assert_eq!(v["cf"], json!([2, 2, 1, 1]));
        assert!(v["jones"]["coeffs"].is_array());
    }

    #[test]
    fn summary_below_one_has_no_jones() {
        let v = get(fraction_summary("3/5"));
        assert!(v.get("jones").is_none());
        assert!(v["left"]["num"]["coeffs"].is_array());
    }

    #[test]
    fn closures_of_flat_quiver() {
        let v = get(quiver_closures("flat:1,2,0"));
        assert_eq!(v["vertices"], 5);
        let counts: Vec<u64> = v["table"].as_array().unwrap().iter().map(|r| r["count"].as_u64().unwrap()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 1, 1]);
        assert_eq!(v["table"][2]["closures"], json!([[4, 5]]));
    }

    #[test]
    fn word_with_trace() {
        let v = get(word_matrix("cf:1,2,1,2"));
        assert_eq!(v["canonical_trace"]["coeffs"], json!([1, 2, 3, 2, 3, 2, 1]));
    }

    #[test]
    fn errors_are_reported_as_json() {
        for s in [fraction_summary("x"), quiver_closures("fence:"), word_matrix("Z^3")] {
            assert!(get(s)["error"].is_string());
        }
    }
}
