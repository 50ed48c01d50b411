use super::TriSeries;

/// One line per order: `t^n: <poly>`.
pub fn render_text(s: &TriSeries) -> String {
    let mut out = String::new();
    for (n, p) in s.coeffs().iter().enumerate() {
        out.push_str(&format!("t^{n}: {p}\n"));
    }
    out
}

/// JSON array of `{n, x, y, z, coeff}` objects; coefficients are decimal
/// strings so that no precision is lost.
pub fn render_json(s: &TriSeries) -> String {
    let terms: Vec<_> = s
        .coeffs()
        .iter()
        .enumerate()
        .flat_map(|(n, p)| p.json_terms(n))
        .collect();
    serde_json::to_string_pretty(&terms).expect("terms serialize")
}

/// Comma-separated coefficients of the series after substituting integers
/// for `x, y, z`.
pub fn render_numeric(s: &TriSeries, x: i64, y: i64, z: i64) -> String {
    s.eval_int(x, y, z)
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
