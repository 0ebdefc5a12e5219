use pyo3::prelude::*;

#[pymodule]
fn genkahler_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
