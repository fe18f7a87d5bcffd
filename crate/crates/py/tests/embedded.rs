use pyo3::ffi::c_str;
use pyo3::prelude::*;
use qmat::qmat;

#[test]
fn module_imports_and_computes() {
    pyo3::append_to_inittab!(qmat);
    Python::initialize();
    Python::attach(|py| {
        let code = c_str!(
            r#"
import qmat
c = qmat.Calculus(1, 2)
assert c.nf("t[2,1] t[1,1]") == "(q^-1) t[1,1] t[2,1]", c.nf("t[2,1] t[1,1]")
h = qmat.HiddenAction(1, 2)
assert h.L == 4
assert h.table()["actions"]["F_1"]["t[2,1]"] == "(-q) t[1,1] t[2,1]"
assert h.verify_grading()["status"] == "pass"
assert qmat.uniqueness_probe(1, 1, 3, 4)["status"] == "pass"
assert qmat.embed_check(1, 1, 4, 3)["status"] == "pass"
try:
    qmat.Calculus(1, 2).nf("t[3,1]")
    raise AssertionError("index error expected")
except ValueError as e:
    assert "t[3,1]" in str(e)
"#
        );
        py.run(code, None, None).unwrap();
    });
}
