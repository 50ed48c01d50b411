//! Named integer sequences and their b-file / CSV renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::combinat::{catalan, gnc_total, little_schroeder, ternary, BigCount};
use crate::error::{Error, Result};
use crate::formulas::{
    alternating, d_avoiding, dd_h, du_h, h_avoiding, parity_signed, printed_prefixes, uu_h, Provenance,
};
use crate::schroder::coker_count;

#[derive(Clone, Copy, Debug)]
pub struct NamedSequence {
    pub name: &'static str,
    pub description: &'static str,
    eval: fn(u64) -> BigCount,
}

impl NamedSequence {
    pub fn value(&self, n: u64) -> BigCount {
        (self.eval)(n)
    }

    pub fn prefix(&self, max_n: u64) -> Vec<BigCount> {
        (0..=max_n).map(self.eval).collect()
    }

    /// Whether a prefix of this sequence is printed in the literature.
    pub fn provenance(&self) -> Provenance {
        if printed_prefixes().iter().any(|p| p.name == self.name) {
            Provenance::Printed
        } else {
            Provenance::Derived
        }
    }
}

fn coker(n: u64) -> BigCount {
    coker_count(n as usize)
}

pub const REGISTRY: [NamedSequence; 14] = [
    NamedSequence { name: "gnc-total", description: "all GNC-trees with n edges", eval: gnc_total },
    NamedSequence { name: "gnc-h", description: "h-avoiding GNC-trees", eval: h_avoiding },
    NamedSequence { name: "gnc-d", description: "d-avoiding GNC-trees", eval: d_avoiding },
    NamedSequence { name: "gnc-hd", description: "{h,d}-avoiding (increasing) GNC-trees", eval: little_schroeder },
    NamedSequence { name: "gnc-uu-h", description: "{uu,h}-avoiding GNC-trees", eval: uu_h },
    NamedSequence { name: "gnc-dd-h", description: "{dd,h}-avoiding GNC-trees", eval: dd_h },
    NamedSequence { name: "gnc-ud-h", description: "{ud,h}-avoiding GNC-trees", eval: little_schroeder },
    NamedSequence { name: "gnc-du-h", description: "{du,h}-avoiding GNC-trees", eval: du_h },
    NamedSequence { name: "gnc-alt", description: "alternating ({uu,dd,h}-avoiding) GNC-trees", eval: alternating },
    NamedSequence {
        name: "gnc-parity",
        description: "signed count of alternating GNC-trees by parity of ascents",
        eval: parity_signed,
    },
    NamedSequence { name: "ternary", description: "NC-trees on n+1 points", eval: ternary },
    NamedSequence { name: "catalan", description: "Catalan numbers", eval: catalan },
    NamedSequence { name: "little-schroeder", description: "little Schroeder numbers", eval: little_schroeder },
    NamedSequence { name: "coker", description: "Coker paths of semilength n", eval: coker },
];

pub fn lookup(name: &str) -> Result<&'static NamedSequence> {
    REGISTRY.iter().find(|s| s.name == name).ok_or_else(|| {
        let names: Vec<&str> = REGISTRY.iter().map(|s| s.name).collect();
        Error::Unsupported(format!("unknown sequence {name:?}; known: {}", names.join(", ")))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum SequenceFormat {
    #[default]
    BFile,
    Csv,
}

impl FromStr for SequenceFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bfile" => Ok(SequenceFormat::BFile),
            "csv" => Ok(SequenceFormat::Csv),
            other => Err(Error::Unsupported(format!("unknown sequence format {other:?} (expected bfile, csv)"))),
        }
    }
}

/// `n a(n)` lines (b-file) or `n,value` rows under a header (CSV),
/// newline-terminated, from `n = 0`.
pub fn render(values: &[BigCount], format: SequenceFormat) -> String {
    let mut out = String::new();
    if format == SequenceFormat::Csv {
        out.push_str("n,value\n");
    }
    let sep = match format {
        SequenceFormat::BFile => ' ',
        SequenceFormat::Csv => ',',
    };
    for (n, v) in values.iter().enumerate() {
        writeln!(out, "{n}{sep}{v}").expect("writing to a string");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bfiles() {
        let h = render(&lookup("gnc-h").unwrap().prefix(6), SequenceFormat::BFile);
        assert!(h.starts_with("0 1\n1 1\n2 5\n"));
        assert!(h.ends_with("6 12985\n"));
        let du = render(&lookup("gnc-du-h").unwrap().prefix(6), SequenceFormat::BFile);
        assert!(du.ends_with("6 6025\n"));
        let total = render(&lookup("gnc-total").unwrap().prefix(4), SequenceFormat::BFile);
        assert!(total.ends_with("4 880\n"));
        let csv = render(&lookup("catalan").unwrap().prefix(2), SequenceFormat::Csv);
        assert_eq!(csv, "n,value\n0,1\n1,1\n2,2\n");
    }

    #[test]
    fn registry() {
        assert!(lookup("nope").is_err());
        assert_eq!(lookup("gnc-h").unwrap().provenance(), Provenance::Printed);
        assert_eq!(lookup("coker").unwrap().provenance(), Provenance::Derived);
        assert_eq!(
            lookup("gnc-parity").unwrap().prefix(7),
            [1, -1, 0, 2, 0, -8, 0, 40].map(BigCount::from).to_vec()
        );
        assert_eq!(lookup("coker").unwrap().prefix(5), lookup("gnc-dd-h").unwrap().prefix(5));
        for p in printed_prefixes() {
            let s = lookup(p.name).unwrap();
            assert_eq!(s.prefix(p.values.len() as u64 - 1), p.values);
        }
    }
}
