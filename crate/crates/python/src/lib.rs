//! Python bindings. Structured results come back as plain dicts and lists.

use knoerrer::endomorphism::{verify_iso, EndAlgebra};
use knoerrer::equivalence::{compare, k0_singularity, local_fd_obstruction, KeptSet, Singularity};
use knoerrer::fractions::{self, evaluate, expand, lambda_seq, t_map, CoprimePair, Evaluated, HJSeq};
use knoerrer::homology::Homology;
use knoerrer::monomial::KappaAlgebra;
use knoerrer::presentations::{
    knoerrer_presentation, lambda_presentation, recon_presentation, riemenschneider_presentation, AlgebraKind,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::{json, Value};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn pair(r: u64, a: u64) -> PyResult<CoprimePair> {
    CoprimePair::new(r, a).map_err(err)
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.into_pyobject(py)?.into_any(),
            (None, Some(i)) => i.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(xs) => {
            let list = PyList::empty(py);
            for x in xs {
                list.append(to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(m) => {
            let dict = PyDict::new(py);
            for (k, x) in m {
                dict.set_item(k, to_py(py, x)?)?;
            }
            dict.into_any()
        }
    })
}

/// Continued fraction expansion of `r/a`.
#[pyfunction]
fn expand_fraction(r: u64, a: u64) -> PyResult<Vec<u64>> {
    Ok(expand(pair(r, a)?).entries().to_vec())
}

/// Value of a continued fraction as `(r, a)`; `(1, 0)` for the empty sequence.
#[pyfunction]
fn evaluate_fraction(alpha: Vec<u64>) -> PyResult<(u64, u64)> {
    match evaluate(&HJSeq::new(alpha).map_err(err)?).map_err(err)? {
        Evaluated::Pair(p) => Ok((p.r(), p.a())),
        Evaluated::Smooth => Ok((1, 0)),
    }
}

#[pyfunction]
fn dual(alpha: Vec<u64>) -> PyResult<Vec<u64>> {
    Ok(fractions::dual(&HJSeq::new(alpha).map_err(err)?).entries().to_vec())
}

#[pyfunction]
fn lambda_sequence(r: u64, a: u64) -> PyResult<Vec<u64>> {
    Ok(lambda_seq(&expand(pair(r, a)?)).map_err(err)?.values)
}

#[pyfunction]
fn t(r: u64, a: u64) -> PyResult<Vec<usize>> {
    Ok(t_map(&expand(pair(r, a)?)))
}

/// Dimensions of the monomial ideals of κ, in order.
#[pyfunction]
fn ideal_dims(r: u64, a: u64) -> PyResult<Vec<usize>> {
    Ok(KappaAlgebra::new(pair(r, a)?).ideals().iter().map(|i| i.dim).collect())
}

/// Presentation of `lambda`, `recon`, `knoerrer` or `riemenschneider`.
#[pyfunction]
#[pyo3(signature = (algebra, r, a, format = "dict"))]
fn present<'py>(py: Python<'py>, algebra: &str, r: u64, a: u64, format: &str) -> PyResult<Bound<'py, PyAny>> {
    let p = pair(r, a)?;
    let kind: AlgebraKind = algebra.parse().map_err(err)?;
    let (json, text, dot) = if kind == AlgebraKind::Riemenschneider {
        let c = riemenschneider_presentation(p);
        (c.to_json(), c.to_text(), c.to_dot())
    } else {
        let alpha = expand(p);
        let pres = match kind {
            AlgebraKind::Lambda => lambda_presentation(&alpha),
            AlgebraKind::Recon => recon_presentation(&alpha),
            _ => knoerrer_presentation(p),
        };
        (pres.to_json(), pres.to_text(), pres.to_dot())
    };
    match format {
        "dict" => to_py(py, &serde_json::from_str(&json).map_err(err)?),
        "json" => Ok(json.into_pyobject(py)?.into_any()),
        "text" => Ok(text.into_pyobject(py)?.into_any()),
        "dot" => Ok(dot.into_pyobject(py)?.into_any()),
        other => Err(err(format!("unknown format {other:?}"))),
    }
}

/// Ext dimensions `table[k][i][j] = dim Ext^k(S_i, S_j)` and global dimension.
#[pyfunction]
#[pyo3(signature = (r, a, depth = 4))]
fn ext_table<'py>(py: Python<'py>, r: u64, a: u64, depth: usize) -> PyResult<Bound<'py, PyAny>> {
    let end = EndAlgebra::new(pair(r, a)?);
    let (ext, gd) = Homology::new(&end).and_then(|h| h.ext_and_global_dimension(depth)).map_err(err)?;
    to_py(py, &json!({ "dims": ext.dims, "global_dimension": gd.to_string() }))
}

/// Structural checks on the endomorphism algebra of the pair.
#[pyfunction]
#[pyo3(signature = (r, a, depth = 4))]
fn verify<'py>(py: Python<'py>, r: u64, a: u64, depth: usize) -> PyResult<Bound<'py, PyAny>> {
    let p = pair(r, a)?;
    let iso = verify_iso(p).map_err(err)?;
    let end = EndAlgebra::new(p);
    let (_, gd) = Homology::new(&end).and_then(|h| h.ext_and_global_dimension(depth)).map_err(err)?;
    to_py(py, &json!({
        "dim": iso.dim,
        "relations_hold": iso.relations_hold(),
        "surjective": iso.surjective(),
        "block_dims": iso.block_dims,
        "phi_iso": iso.ok(),
        "corner_is_kappa": end.corner_matches_kappa(),
        "global_dimension": gd.to_string(),
    }))
}

/// Compare two partial resolutions given as `(alpha, kept)`.
#[pyfunction]
fn equivalent<'py>(
    py: Python<'py>,
    left: (Vec<u64>, Vec<usize>),
    right: (Vec<u64>, Vec<usize>),
) -> PyResult<Bound<'py, PyAny>> {
    let cfg = |(alpha, kept): (Vec<u64>, Vec<usize>)| -> PyResult<(HJSeq, KeptSet)> {
        Ok((HJSeq::new(alpha).map_err(err)?, KeptSet::new(kept).map_err(err)?))
    };
    let (a, b) = (cfg(left)?, cfg(right)?);
    let v = compare((&a.0, &a.1), (&b.0, &b.1)).map_err(err)?;
    to_py(py, &json!({
        "equivalent": v.chunk_verdict,
        "concatenation_verdict": v.concatenation_verdict,
        "disagreement": v.disagreement,
        "left": v.left,
        "right": v.right,
    }))
}

/// Grothendieck group of the singularity category: `k0("cyclic", [r, a])`,
/// `k0("d", [n])`, `k0("e", [n])` or `k0("dihedral", [n, m])`.
#[pyfunction]
fn k0<'py>(py: Python<'py>, kind: &str, params: Vec<u64>) -> PyResult<Bound<'py, PyAny>> {
    let sing = match (kind, params.as_slice()) {
        ("cyclic", &[r, a]) => Singularity::Cyclic { r, a },
        ("d", &[n]) => Singularity::GorensteinD { n },
        ("e", &[n]) => Singularity::GorensteinE { n },
        ("dihedral", &[n, m]) => Singularity::DihedralD { n, m },
        _ => return Err(err("expected cyclic [r, a] | d [n] | e [n] | dihedral [n, m]")),
    };
    let group = k0_singularity(sing).map_err(err)?;
    let obstruction = local_fd_obstruction(&group);
    to_py(py, &json!({
        "k0": group.to_string(),
        "order": group.order(),
        "obstruction": obstruction,
        "verdict": obstruction.to_string(),
    }))
}

#[pymodule]
fn knoerrer_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(expand_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(dual, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(t, m)?)?;
    m.add_function(wrap_pyfunction!(ideal_dims, m)?)?;
    m.add_function(wrap_pyfunction!(present, m)?)?;
    m.add_function(wrap_pyfunction!(ext_table, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(k0, m)?)?;
    Ok(())
}
