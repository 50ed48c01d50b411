use gnctrees::gnctrees;
use pyo3::ffi::c_str;
use pyo3::prelude::*;

#[test]
fn module_runs_in_an_embedded_interpreter() {
    pyo3::append_to_inittab!(gnctrees);
    Python::initialize();
    Python::attach(|py| {
        py.run(
            c_str!(
                r#"
import gnctrees
assert gnctrees.count(4, "h", method="formula") == 217
assert gnctrees.count(3, "h,d", method="series") == 11
assert gnctrees.census(0) == {(0, 0, 0): 1}
t = gnctrees.decode("UFFUFDDUUDD")
assert t.encode() == "UFFUFDDUUDD"
assert gnctrees.GncTree.from_json(t.to_json()) == t
assert gnctrees.series("master", order=5, at=(1, 1, 1))["master"] == [1, 2, 12, 96, 880, 8736]
assert gnctrees.sequence("gnc-h", 6) == [1, 1, 5, 31, 217, 1637, 12985]
try:
    gnctrees.decode("UDD")
except gnctrees.GncError:
    pass
else:
    raise AssertionError("malformed path accepted")
assert gnctrees.verify("bijection", max_n=4).passed
"#
            ),
            None,
            None,
        )
        .unwrap();
    });
}
