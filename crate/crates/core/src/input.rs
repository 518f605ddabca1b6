//! The JSON input format: named algebra / pair / poisson / module / jet /
//! equivalence definitions in one document, with every rational written as
//! a `"p/q"` string so no float ever enters the pipeline.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    validate_associative, validate_lie, validate_module, validate_pair, validate_poisson,
    AlgebraKind, LeibnizPair, PairModule, PoissonAlgebra, StructureAlgebra, Tensor3,
    ValidationReport,
};
use crate::deform::{DeformationJet, EquivalenceJet, JetBase};
use crate::linalg::RationalMatrix;
use crate::rational::{format_rat, parse_rat};
use crate::{Error, Result};

/// A rank-3 tensor as nested arrays of rational strings, `data[i][j][k]`.
pub type TensorData = Vec<Vec<Vec<String>>>;
/// A matrix as rows of rational strings, `data[row][col]`.
pub type MatrixData = Vec<Vec<String>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ObjectDef {
    Associative {
        dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        basis_labels: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit: Option<usize>,
        structure: TensorData,
    },
    Lie {
        dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        basis_labels: Option<Vec<String>>,
        structure: TensorData,
    },
    Pair {
        algebra: String,
        lie: String,
        mu: TensorData,
    },
    Poisson {
        algebra: String,
        bracket: TensorData,
    },
    Module {
        pair: String,
        m_dim: usize,
        p_dim: usize,
        left_action: TensorData,
        right_action: TensorData,
        l_on_m: TensorData,
        l_on_p: TensorData,
        p_on_a: TensorData,
    },
    Jet {
        base: String,
        alpha: Vec<TensorData>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        mu: Vec<TensorData>,
        lambda: Vec<TensorData>,
    },
    Equivalence {
        base: String,
        phi: Vec<MatrixData>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        psi: Vec<MatrixData>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InputDocument {
    pub schema_version: String,
    pub objects: IndexMap<String, ObjectDef>,
}

pub fn parse_document(text: &str) -> Result<InputDocument> {
    serde_json::from_str(text)
        .map_err(|e| Error::Structural(format!("document does not parse: {e}")))
}

pub fn to_json(doc: &InputDocument) -> String {
    // IndexMap keeps insertion order, so this is byte-for-byte deterministic
    serde_json::to_string_pretty(doc).expect("document serialization cannot fail")
}

fn parse_tensor(name: &str, data: &TensorData, d0: usize, d1: usize, d2: usize) -> Result<Tensor3> {
    if data.len() != d0 {
        return Err(Error::Structural(format!(
            "{name}: expected {d0} outer entries, found {}",
            data.len()
        )));
    }
    let mut flat = Vec::with_capacity(d0 * d1 * d2);
    for (i, plane) in data.iter().enumerate() {
        if plane.len() != d1 {
            return Err(Error::Structural(format!(
                "{name}[{i}]: expected {d1} entries, found {}",
                plane.len()
            )));
        }
        for (j, row) in plane.iter().enumerate() {
            if row.len() != d2 {
                return Err(Error::Structural(format!(
                    "{name}[{i}][{j}]: expected {d2} entries, found {}",
                    row.len()
                )));
            }
            for s in row {
                flat.push(parse_rat(s)?);
            }
        }
    }
    Tensor3::from_data(d0, d1, d2, flat)
}

fn parse_matrix(name: &str, data: &MatrixData, rows: usize, cols: usize) -> Result<RationalMatrix> {
    if data.len() != rows {
        return Err(Error::Structural(format!(
            "{name}: expected {rows} rows, found {}",
            data.len()
        )));
    }
    let mut out = RationalMatrix::zero(rows, cols);
    for (r, row) in data.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Structural(format!(
                "{name} row {r}: expected {cols} entries, found {}",
                row.len()
            )));
        }
        for (c, s) in row.iter().enumerate() {
            *out.get_mut(r, c) = parse_rat(s)?;
        }
    }
    Ok(out)
}

pub fn tensor_to_data(t: &Tensor3) -> TensorData {
    (0..t.d0)
        .map(|i| {
            (0..t.d1)
                .map(|j| (0..t.d2).map(|k| format_rat(t.get(i, j, k))).collect())
                .collect()
        })
        .collect()
}

pub fn matrix_to_data(m: &RationalMatrix) -> MatrixData {
    (0..m.rows)
        .map(|r| (0..m.cols).map(|c| format_rat(m.get(r, c))).collect())
        .collect()
}

impl InputDocument {
    fn get(&self, name: &str) -> Result<&ObjectDef> {
        self.objects
            .get(name)
            .ok_or_else(|| Error::Structural(format!("no object named {name:?}")))
    }

    pub fn resolve_associative(&self, name: &str) -> Result<StructureAlgebra> {
        match self.get(name)? {
            ObjectDef::Associative { dim, basis_labels, unit, structure } => {
                let c = parse_tensor(name, structure, *dim, *dim, *dim)?;
                StructureAlgebra::new(
                    AlgebraKind::Associative,
                    *dim,
                    basis_labels.clone(),
                    c,
                    *unit,
                )
            }
            _ => Err(Error::Structural(format!("{name:?} is not an associative algebra"))),
        }
    }

    pub fn resolve_lie(&self, name: &str) -> Result<StructureAlgebra> {
        match self.get(name)? {
            ObjectDef::Lie { dim, basis_labels, structure } => {
                let c = parse_tensor(name, structure, *dim, *dim, *dim)?;
                StructureAlgebra::new(AlgebraKind::Lie, *dim, basis_labels.clone(), c, None)
            }
            _ => Err(Error::Structural(format!("{name:?} is not a Lie algebra"))),
        }
    }

    pub fn resolve_pair(&self, name: &str) -> Result<LeibnizPair> {
        match self.get(name)? {
            ObjectDef::Pair { algebra, lie, mu } => {
                let a = self.resolve_associative(algebra)?;
                let l = self.resolve_lie(lie)?;
                let mu = parse_tensor(name, mu, l.dim, a.dim, a.dim)?;
                LeibnizPair::new(a, l, mu)
            }
            ObjectDef::Poisson { .. } => Ok(self.resolve_poisson(name)?.as_pair()),
            _ => Err(Error::Structural(format!("{name:?} is not a pair"))),
        }
    }

    pub fn resolve_poisson(&self, name: &str) -> Result<PoissonAlgebra> {
        match self.get(name)? {
            ObjectDef::Poisson { algebra, bracket } => {
                let a = self.resolve_associative(algebra)?;
                let bracket = parse_tensor(name, bracket, a.dim, a.dim, a.dim)?;
                PoissonAlgebra::new(a, bracket)
            }
            _ => Err(Error::Structural(format!("{name:?} is not a poisson algebra"))),
        }
    }

    /// A module definition together with the pair it lives over.
    pub fn resolve_module(&self, name: &str) -> Result<(LeibnizPair, PairModule)> {
        match self.get(name)? {
            ObjectDef::Module {
                pair,
                m_dim,
                p_dim,
                left_action,
                right_action,
                l_on_m,
                l_on_p,
                p_on_a,
            } => {
                let pair = self.resolve_pair(pair)?;
                let (na, nl) = (pair.a.dim, pair.l.dim);
                let module = PairModule::new(
                    &pair,
                    *m_dim,
                    *p_dim,
                    parse_tensor(name, left_action, na, *m_dim, *m_dim)?,
                    parse_tensor(name, right_action, *m_dim, na, *m_dim)?,
                    parse_tensor(name, l_on_m, nl, *m_dim, *m_dim)?,
                    parse_tensor(name, l_on_p, nl, *p_dim, *p_dim)?,
                    parse_tensor(name, p_on_a, *p_dim, na, *m_dim)?,
                )?;
                Ok((pair, module))
            }
            _ => Err(Error::Structural(format!("{name:?} is not a module"))),
        }
    }

    /// A jet base by name: a pair or a poisson algebra.
    pub fn resolve_base(&self, name: &str) -> Result<JetBase> {
        match self.get(name)? {
            ObjectDef::Pair { .. } => Ok(JetBase::Leibniz(self.resolve_pair(name)?)),
            ObjectDef::Poisson { .. } => Ok(JetBase::Poisson(self.resolve_poisson(name)?)),
            _ => Err(Error::Structural(format!("{name:?} is neither a pair nor poisson"))),
        }
    }

    pub fn resolve_jet(&self, name: &str) -> Result<DeformationJet> {
        match self.get(name)? {
            ObjectDef::Jet { base, alpha, mu, lambda } => {
                let base = self.resolve_base(base)?;
                let (na, nl) = match &base {
                    JetBase::Leibniz(p) => (p.a.dim, p.l.dim),
                    JetBase::Poisson(p) => (p.a.dim, p.a.dim),
                };
                let alpha = alpha
                    .iter()
                    .map(|t| parse_tensor(name, t, na, na, na))
                    .collect::<Result<Vec<_>>>()?;
                let mut mu = mu
                    .iter()
                    .map(|t| parse_tensor(name, t, nl, na, na))
                    .collect::<Result<Vec<_>>>()?;
                // an omitted mu list means "no mu deformation"
                if matches!(base, JetBase::Leibniz(_)) && mu.is_empty() {
                    mu = vec![Tensor3::zeros(nl, na, na); alpha.len()];
                }
                let lambda = lambda
                    .iter()
                    .map(|t| parse_tensor(name, t, nl, nl, nl))
                    .collect::<Result<Vec<_>>>()?;
                DeformationJet::new(base, alpha, mu, lambda)
            }
            _ => Err(Error::Structural(format!("{name:?} is not a jet"))),
        }
    }

    pub fn resolve_equivalence(&self, name: &str) -> Result<(JetBase, EquivalenceJet)> {
        match self.get(name)? {
            ObjectDef::Equivalence { base, phi, psi } => {
                let base = self.resolve_base(base)?;
                let (na, nl) = match &base {
                    JetBase::Leibniz(p) => (p.a.dim, p.l.dim),
                    JetBase::Poisson(p) => (p.a.dim, p.a.dim),
                };
                let phi = phi
                    .iter()
                    .map(|m| parse_matrix(name, m, na, na))
                    .collect::<Result<Vec<_>>>()?;
                let psi = psi
                    .iter()
                    .map(|m| parse_matrix(name, m, nl, nl))
                    .collect::<Result<Vec<_>>>()?;
                if matches!(base, JetBase::Poisson(_)) && !psi.is_empty() {
                    return Err(Error::Structural(
                        "a poisson equivalence carries no separate psi list".into(),
                    ));
                }
                if matches!(base, JetBase::Leibniz(_)) && psi.len() != phi.len() {
                    return Err(Error::Structural(
                        "phi and psi lists must have the same length".into(),
                    ));
                }
                Ok((base, EquivalenceJet { phi, psi }))
            }
            _ => Err(Error::Structural(format!("{name:?} is not an equivalence"))),
        }
    }

    /// Run the axiom validators appropriate to one named object. Jets and
    /// equivalences validate their base and their own shape constraints.
    pub fn validate_object(&self, name: &str) -> Result<ValidationReport> {
        let merge = |reports: Vec<ValidationReport>| {
            let mut all = Vec::new();
            for r in reports {
                all.extend(r.violations);
            }
            ValidationReport { violations: all }
        };
        match self.get(name)? {
            ObjectDef::Associative { .. } => validate_associative(&self.resolve_associative(name)?),
            ObjectDef::Lie { .. } => validate_lie(&self.resolve_lie(name)?),
            ObjectDef::Pair { .. } => {
                let pair = self.resolve_pair(name)?;
                Ok(merge(vec![
                    validate_associative(&pair.a)?,
                    validate_lie(&pair.l)?,
                    validate_pair(&pair)?,
                ]))
            }
            ObjectDef::Poisson { .. } => {
                let p = self.resolve_poisson(name)?;
                Ok(merge(vec![validate_associative(&p.a)?, validate_poisson(&p)?]))
            }
            ObjectDef::Module { .. } => {
                let (pair, module) = self.resolve_module(name)?;
                validate_module(&pair, &module)
            }
            ObjectDef::Jet { base, .. } => {
                self.resolve_jet(name)?;
                self.validate_object(&base.clone())
            }
            ObjectDef::Equivalence { base, .. } => {
                self.resolve_equivalence(name)?;
                self.validate_object(&base.clone())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;
    use crate::samples;

    fn doc(text: &str) -> InputDocument {
        parse_document(text).unwrap()
    }

    const DUAL: &str = r#"{
      "schema_version": "1",
      "objects": {
        "dual": {
          "type": "associative", "dim": 2, "basis_labels": ["1", "x"], "unit": 0,
          "structure": [[["1","0"],["0","1"]],[["0","1"],["0","0"]]]
        },
        "zero_lie": {"type": "lie", "dim": 0, "structure": []},
        "dual_pair": {"type": "pair", "algebra": "dual", "lie": "zero_lie", "mu": []},
        "square_root_of_t": {
          "type": "jet", "base": "dual_pair",
          "alpha": [[[["0","0"],["0","0"]],[["0","0"],["1","0"]]]],
          "lambda": [[]]
        }
      }
    }"#;

    #[test]
    fn dual_document_resolves_to_the_sample() {
        let d = doc(DUAL);
        let pair = d.resolve_pair("dual_pair").unwrap();
        assert_eq!(pair, samples::dual_pair());
        assert!(d.validate_object("dual_pair").unwrap().ok());
        let jet = d.resolve_jet("square_root_of_t").unwrap();
        assert_eq!(jet.alpha[0].get(1, 1, 0), &rat_int(1));
    }

    #[test]
    fn round_trip_preserves_resolution() {
        let d = doc(DUAL);
        let text = to_json(&d);
        let d2 = doc(&text);
        assert_eq!(d.resolve_pair("dual_pair").unwrap(), d2.resolve_pair("dual_pair").unwrap());
        assert_eq!(text, to_json(&d2));
    }

    #[test]
    fn zero_denominator_is_a_parse_failure() {
        let bad = DUAL.replacen("\"1\",\"0\"", "\"1/0\",\"0\"", 1);
        let d = doc(&bad);
        assert!(d.resolve_pair("dual_pair").is_err());
    }

    #[test]
    fn unknown_name_is_structural() {
        let d = doc(DUAL);
        assert!(matches!(d.resolve_pair("missing"), Err(Error::Structural(_))));
    }

    #[test]
    fn shape_mismatch_reported_with_location() {
        let bad = DUAL.replacen("[[\"1\",\"0\"],[\"0\",\"1\"]]", "[[\"1\",\"0\"]]", 1);
        let d = doc(&bad);
        let err = d.resolve_associative("dual").unwrap_err();
        let Error::Structural(msg) = err else { panic!("wrong error kind") };
        assert!(msg.contains("dual[0]"), "{msg}");
    }

    #[test]
    fn poisson_and_module_resolution() {
        let text = r#"{
          "schema_version": "1",
          "objects": {
            "a3": {
              "type": "associative", "dim": 3, "basis_labels": ["1","x","y"], "unit": 0,
              "structure": [
                [["1","0","0"],["0","1","0"],["0","0","1"]],
                [["0","1","0"],["0","0","0"],["0","0","0"]],
                [["0","0","1"],["0","0","0"],["0","0","0"]]
              ]
            },
            "pois3": {
              "type": "poisson", "algebra": "a3",
              "bracket": [
                [["0","0","0"],["0","0","0"],["0","0","0"]],
                [["0","0","0"],["0","0","0"],["0","1","0"]],
                [["0","0","0"],["0","-1","0"],["0","0","0"]]
              ]
            }
          }
        }"#;
        let d = doc(text);
        let p = d.resolve_poisson("pois3").unwrap();
        assert_eq!(p, samples::pois3());
        assert!(d.validate_object("pois3").unwrap().ok());
        // a poisson name also resolves as a pair (its associated pair)
        assert_eq!(d.resolve_pair("pois3").unwrap(), samples::pois3().as_pair());
    }
}
