//! The `--paper-table` battery: published matrix multiplication values
//! recomputed and compared.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use obstruction::run::SearchOptions;
use obstruction::valuation;
use obstruction::Error;

#[derive(Debug)]
pub enum TableError {
    Search(Error),
    Mismatch(usize),
}

impl From<Error> for TableError {
    fn from(e: Error) -> Self {
        TableError::Search(e)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Row {
    pub case: String,
    pub expected: String,
    pub computed: String,
    pub matches: bool,
    pub seconds: f64,
}

fn row(case: &str, expected: impl ToString, computed: impl ToString, seconds: f64) -> Row {
    let (expected, computed) = (expected.to_string(), computed.to_string());
    Row {
        case: case.into(),
        matches: expected == computed,
        expected,
        computed,
        seconds,
    }
}

fn tally(c: &valuation::ClassReport) -> String {
    format!("{}/{}", c.sum.distinct.positives(), c.sum.distinct.negatives())
}

pub fn rows(quick: bool, opts: &SearchOptions) -> Result<Vec<Row>, Error> {
    let mut out = Vec::new();

    let t = Instant::now();
    let e = valuation::evaluate_matmul(2, 2, 2, opts)?;
    out.push(row("F_(2,2,2)(<2,2,2>)", 864, &e.oriented_value, t.elapsed().as_secs_f64()));

    let t = Instant::now();
    let e = valuation::evaluate_matmul(2, 2, 3, opts)?;
    let secs = t.elapsed().as_secs_f64();
    out.push(row("F_(2,2,3)(<2,2,3>)", 181440, &e.oriented_value, secs));
    out.push(row("<2,2,3> valid classes", 7, e.classes.len(), 0.0));
    if let Some(i0) = e.classes.iter().find(|c| c.canonical) {
        out.push(row("<2,2,3> class I0 (+/-)", "182592/1152", tally(i0), 0.0));
    }
    for (k, c) in e.classes.iter().filter(|c| !c.canonical).enumerate() {
        out.push(row(&format!("<2,2,3> other class {} (+/-)", k + 1), "36672/36672", tally(c), 0.0));
    }

    let t = Instant::now();
    let e = valuation::evaluate_matmul(1, 3, 3, opts)?;
    out.push(row("F_(1,3,3)(<1,3,3>)", 8640, &e.oriented_value, t.elapsed().as_secs_f64()));

    if !quick {
        let t = Instant::now();
        let e = valuation::evaluate_matmul(1, 4, 4, opts)?;
        out.push(row("F_(1,4,4)(<1,4,4>)", 870_912_000u64, &e.oriented_value, t.elapsed().as_secs_f64()));

        let t = Instant::now();
        let e = valuation::class_sum_i0(2, 2, 4, opts)?;
        out.push(row("F_(2,2,4)[<2,2,4>_I0]", 100_362_240u64, &e.oriented_value, t.elapsed().as_secs_f64()));
    }
    Ok(out)
}

pub fn run(json: bool, quick: bool, opts: &SearchOptions) -> Result<(), TableError> {
    let rows = rows(quick, opts)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
    } else {
        let w = rows.iter().map(|r| r.case.chars().count()).max().unwrap_or(0);
        println!("{:w$}  {:>14}  {:>14}  {:>9}  result", "case", "published", "computed", "seconds");
        for r in &rows {
            println!(
                "{:w$}  {:>14}  {:>14}  {:>9.2}  {}",
                r.case,
                r.expected,
                r.computed,
                r.seconds,
                if r.matches { "match" } else { "DIFFERS" }
            );
        }
    }
    match rows.iter().filter(|r| !r.matches).count() {
        0 => Ok(()),
        n => Err(TableError::Mismatch(n)),
    }
}
