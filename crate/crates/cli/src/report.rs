//! Plain-text renderings of the command reports.

use std::fmt::Write;

use obstruction::latin::LatinCensus;
use obstruction::valuation::{
    CanonicalClassEvaluation, ClassReport, MatmulEvaluation, TensorEvaluation, UnitEvaluation, Verdict,
};
use obstruction::verify::SuiteReport;

use crate::{AlonTarsiReport, HyperdetReport, KronReport, UnipotentReport};

pub trait Report {
    fn text(&self) -> String;
}

fn summands(c: &ClassReport) -> String {
    c.summands
        .iter()
        .map(|([i, j, k], m)| if *m == 1 { format!("({i},{j},{k})") } else { format!("({i},{j},{k})^{m}") })
        .collect::<Vec<_>>()
        .join(" ")
}

fn class_line(out: &mut String, idx: usize, c: &ClassReport) {
    let _ = writeln!(
        out,
        "  class {idx}{}: +{} -{} = {}  [{}]",
        if c.canonical { " (I0)" } else { "" },
        c.sum.distinct.positives(),
        c.sum.distinct.negatives(),
        c.sum.distinct.value(),
        summands(c)
    );
}

impl Report for MatmulEvaluation {
    fn text(&self) -> String {
        let mut out = format!("<{},{},{}>: {} valid classes\n", self.l, self.m, self.n, self.classes.len());
        for (i, c) in self.classes.iter().enumerate() {
            class_line(&mut out, i + 1, c);
        }
        let _ = write!(
            out,
            "lexicographic total {} (+{} -{}), val(I0) = {}\nF = {}",
            self.total.value(),
            self.total.positives(),
            self.total.negatives(),
            self.orientation,
            self.oriented_value
        );
        out
    }
}

impl Report for CanonicalClassEvaluation {
    fn text(&self) -> String {
        let mut out = format!("<{},{},{}> class I0\n", self.l, self.m, self.n);
        class_line(&mut out, 1, &self.report);
        let _ = write!(out, "val(I0) = {}\nF[I0] = {}", self.orientation, self.oriented_value);
        out
    }
}

impl Report for UnitEvaluation {
    fn text(&self) -> String {
        let deleted = if self.design.deleted.is_empty() { "" } else { " minus a diagonal" };
        format!(
            "<{}> on B({n},{n},{n}){deleted}: lexicographic total {} (+{} -{}), orientation {}\nF = {}",
            self.m,
            self.total.value(),
            self.total.positives(),
            self.total.negatives(),
            self.orientation,
            self.oriented_value,
            n = self.n,
        )
    }
}

impl Report for UnipotentReport {
    fn text(&self) -> String {
        let mut out = format!(
            "unipotent cubes of order {}: {} even, {} odd, difference {}",
            self.n,
            self.enumeration.positives(),
            self.enumeration.negatives(),
            self.enumeration_value
        );
        if let Some(e) = &self.evaluation {
            let _ = write!(
                out,
                "\ninvariant on the cube minus its main diagonal: {} (lexicographic {}, orientation {})\nagree: {}",
                e.oriented_value,
                e.total.value(),
                e.orientation,
                self.agree == Some(true)
            );
        }
        out
    }
}

impl Report for LatinCensus {
    fn text(&self) -> String {
        format!(
            "order {}: {} cubes\n  even {}  odd {}  difference {}\n  symbol-even {}  symbol-odd {}  difference {}",
            self.n,
            self.total,
            self.even,
            self.odd,
            self.delta(),
            self.symbol_even,
            self.symbol_odd,
            self.symbol_delta()
        )
    }
}

impl Report for AlonTarsiReport {
    fn text(&self) -> String {
        match (&self.census, &self.squares) {
            (Some(c), _) => c.text(),
            (None, Some(s)) => format!(
                "Latin squares of order {}: {} even, {} odd, difference {}",
                self.n,
                s.positives(),
                s.negatives(),
                self.delta
            ),
            (None, None) => format!("difference {}", self.delta),
        }
    }
}

impl Report for KronReport {
    fn text(&self) -> String {
        format!("k({}, {}, {}) = {}", self.lambda, self.mu, self.nu, self.coefficient)
    }
}

impl Report for HyperdetReport {
    fn text(&self) -> String {
        format!("n = {}\nDet = {}\nPer = {}", self.n, self.det, self.per)
    }
}

impl Report for Vec<SuiteReport> {
    fn text(&self) -> String {
        let mut out = String::new();
        for r in self {
            let failed: Vec<_> = r.cases.iter().filter(|c| !c.passed).collect();
            let _ = writeln!(
                out,
                "{}: {} ({} cases, seed {})",
                r.suite,
                if r.passed { "pass" } else { "FAIL" },
                r.cases.len(),
                r.seed
            );
            for c in failed {
                let _ = writeln!(out, "  failed {}: {}", c.name, c.detail);
            }
        }
        out.trim_end().to_string()
    }
}

impl Report for TensorEvaluation {
    fn text(&self) -> String {
        let how = match self.vanishing.verdict {
            Verdict::VanishesByDimension => format!(
                "zero by dimension (factor ranks {:?}, partition lengths {:?})",
                self.vanishing.ranks, self.vanishing.required
            ),
            Verdict::Inconclusive => "by exhaustive summation".to_string(),
        };
        format!("F = {}  {how}", self.value)
    }
}
