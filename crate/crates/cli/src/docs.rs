//! On-disk document schemas and their conversion to core values.
//!
//! All scalars travel as exact strings. A matrix over the Laurent ring is
//! stored block by block: the entry with `"power": p` is the coefficient
//! matrix of `z^p`.

use pifactor_core::factor::{LatticeForm, LatticeStage, NilFactorization, PrimitiveFactor};
use pifactor_core::wavelet::{haar_matrix, make_paraunitary, WaveletFactorizationBundle};
use pifactor_core::{scalar_format, scalar_parse, ConstMatrix, FieldScalar, FieldTag, LPMatrix};
use serde::{de::DeserializeOwned, Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::json;

pub const SCHEMA_VERSION: u32 = 1;

pub const FACTOR_ORDER_NOTE: &str =
    "C(z) = L_1(z) L_2(z) ... L_r(z) in list order, where L_i(z) = I - N_i + N_i z^-k_i";

pub const LATTICE_ORDER_NOTE: &str = "C(z) = S_1(z) S_2(z) ... S_n(z) diag in list order, where \
     S(z) = I - a E_ij + a E_ij z^-k for k >= 1 and S = I + a E_ij for k = 0; i and j count from 1";

pub type Grid = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub schema_version: u32,
    pub field: String,
    pub rank: usize,
    pub blocks: Vec<BlockEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockEntry {
    pub power: i64,
    pub matrix: Grid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorizationDocument {
    pub schema_version: u32,
    pub rank: usize,
    pub order_note: String,
    pub factors: Vec<FactorEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorEntry {
    pub k: i64,
    #[serde(rename = "N")]
    pub n: Grid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDocument {
    pub schema_version: u32,
    pub field: String,
    pub rank: usize,
    pub order_note: String,
    pub stages: Vec<StageEntry>,
    pub diag: Grid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageEntry {
    pub i: usize,
    pub j: usize,
    pub a: String,
    pub k: i64,
}

/// Ingredients for composing a biorthogonal wavelet pair.
///
/// `nil_factors` use the same left-to-right order as a factorization
/// document. `H` may be omitted at rank 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleDocument {
    pub schema_version: u32,
    pub field: String,
    pub rank: usize,
    pub k0: i64,
    pub paraunitary: Vec<Vec<String>>,
    pub nil_factors: Vec<FactorEntry>,
    #[serde(rename = "G")]
    pub g: Grid,
    #[serde(rename = "H", default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Grid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_genus: Option<usize>,
}

/// A factorization document of either kind, told apart by its keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyFactorization {
    Nilpotent(FactorizationDocument),
    Lattice(LatticeDocument),
}

pub fn field_name(tag: FieldTag) -> &'static str {
    tag.name()
}

pub fn parse_field(name: &str, context: &str) -> CliResult<FieldTag> {
    match name {
        "Q" => Ok(FieldTag::Rational),
        "Q(i)" => Ok(FieldTag::GaussianRational),
        other => Err(CliError::schema(
            context,
            format!("unknown field {other:?}; expected \"Q\" or \"Q(i)\""),
        )),
    }
}

fn check_version(v: u32, context: &str) -> CliResult<()> {
    if v != SCHEMA_VERSION {
        return Err(CliError::schema(
            context,
            format!("unsupported schema_version {v}"),
        ));
    }
    Ok(())
}

fn parse_scalar(text: &str, tag: FieldTag, context: &str) -> CliResult<FieldScalar> {
    scalar_parse(text, tag).map_err(|e| CliError::doc(format!("{context}: {text:?}"), e))
}

pub fn grid_from_const(m: &ConstMatrix) -> Grid {
    m.rows()
        .map(|row| row.iter().map(scalar_format).collect())
        .collect()
}

pub fn const_from_grid(
    grid: &Grid,
    dim: usize,
    tag: FieldTag,
    context: &str,
) -> CliResult<ConstMatrix> {
    if grid.len() != dim || grid.iter().any(|row| row.len() != dim) {
        return Err(CliError::schema(
            context,
            format!("expected a {dim}x{dim} grid"),
        ));
    }
    let rows = grid
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| parse_scalar(s, tag, context))
                .collect::<CliResult<Vec<_>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;
    ConstMatrix::from_rows(tag, rows).map_err(|e| CliError::doc(context, e))
}

/// Parses every entry over `Q(i)` and narrows to `Q` when all are real.
fn infer_field<'a>(
    texts: impl IntoIterator<Item = &'a String>,
    context: &str,
) -> CliResult<FieldTag> {
    for s in texts {
        if !parse_scalar(s, FieldTag::GaussianRational, context)?.is_real() {
            return Ok(FieldTag::GaussianRational);
        }
    }
    Ok(FieldTag::Rational)
}

fn factor_entry(f: &PrimitiveFactor) -> FactorEntry {
    FactorEntry {
        k: f.shift(),
        n: grid_from_const(f.nilpotent()),
    }
}

fn factors_from_entries(
    entries: &[FactorEntry],
    rank: usize,
    tag: FieldTag,
    context: &str,
) -> CliResult<Vec<PrimitiveFactor>> {
    entries
        .iter()
        .enumerate()
        .map(|(n, e)| {
            let ctx = format!("{context}: factor {}", n + 1);
            if e.k < 1 {
                return Err(CliError::schema(
                    ctx,
                    format!("k must be at least 1, got {}", e.k),
                ));
            }
            let m = const_from_grid(&e.n, rank, tag, &ctx)?;
            PrimitiveFactor::new(m, e.k).map_err(|err| CliError::doc(ctx, err))
        })
        .collect()
}

impl MatrixDocument {
    pub fn from_matrix(m: &LPMatrix) -> Self {
        let blocks = match m.support() {
            // block k multiplies z^-k, so walk k downwards for increasing powers
            Some((lo, hi)) => (lo..=hi)
                .rev()
                .filter_map(|k| {
                    let b = m.block(k);
                    (!b.is_zero()).then(|| BlockEntry {
                        power: -k,
                        matrix: grid_from_const(&b),
                    })
                })
                .collect(),
            None => Vec::new(),
        };
        Self {
            schema_version: SCHEMA_VERSION,
            field: field_name(m.tag()).into(),
            rank: m.rank(),
            blocks,
        }
    }

    pub fn to_matrix(&self, context: &str) -> CliResult<LPMatrix> {
        check_version(self.schema_version, context)?;
        let tag = parse_field(&self.field, context)?;
        if self.rank == 0 {
            return Err(CliError::schema(context, "rank must be at least 1"));
        }
        if self.blocks.windows(2).any(|w| w[0].power >= w[1].power) {
            return Err(CliError::schema(
                context,
                "block powers must be strictly increasing",
            ));
        }
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let ctx = format!("{context}: block at power {}", b.power);
            let m = const_from_grid(&b.matrix, self.rank, tag, &ctx)?;
            if m.is_zero() {
                return Err(CliError::schema(ctx, "all-zero blocks are not allowed"));
            }
            blocks.push((-b.power, m));
        }
        LPMatrix::from_blocks(tag, self.rank, &blocks).map_err(|e| CliError::doc(context, e))
    }
}

impl FactorizationDocument {
    pub fn from_factorization(fac: &NilFactorization) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            rank: fac.rank,
            order_note: FACTOR_ORDER_NOTE.into(),
            factors: fac.factors.iter().map(factor_entry).collect(),
        }
    }

    /// Loads the factors over the smallest field holding them, joined with `at_least`.
    pub fn to_factorization(
        &self,
        at_least: FieldTag,
        context: &str,
    ) -> CliResult<NilFactorization> {
        check_version(self.schema_version, context)?;
        if self.order_note != FACTOR_ORDER_NOTE {
            return Err(CliError::schema(
                context,
                "order_note does not match the expected text",
            ));
        }
        if self.rank == 0 {
            return Err(CliError::schema(context, "rank must be at least 1"));
        }
        let tag = infer_field(
            self.factors.iter().flat_map(|f| f.n.iter().flatten()),
            context,
        )?
        .join(at_least);
        let factors = factors_from_entries(&self.factors, self.rank, tag, context)?;
        NilFactorization::new(self.rank, tag, factors).map_err(|e| CliError::doc(context, e))
    }
}

impl LatticeDocument {
    pub fn from_lattice(lf: &LatticeForm) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            field: field_name(lf.tag).into(),
            rank: lf.rank,
            order_note: LATTICE_ORDER_NOTE.into(),
            stages: lf
                .stages
                .iter()
                .map(|s| StageEntry {
                    i: s.i + 1,
                    j: s.j + 1,
                    a: scalar_format(&s.a),
                    k: s.k,
                })
                .collect(),
            diag: grid_from_const(&lf.diag),
        }
    }

    pub fn to_lattice(&self, context: &str) -> CliResult<LatticeForm> {
        check_version(self.schema_version, context)?;
        let tag = parse_field(&self.field, context)?;
        if self.order_note != LATTICE_ORDER_NOTE {
            return Err(CliError::schema(
                context,
                "order_note does not match the expected text",
            ));
        }
        if self.rank == 0 {
            return Err(CliError::schema(context, "rank must be at least 1"));
        }
        let mut stages = Vec::with_capacity(self.stages.len());
        for (n, s) in self.stages.iter().enumerate() {
            let ctx = format!("{context}: stage {}", n + 1);
            let in_range = |x: usize| (1..=self.rank).contains(&x);
            if !in_range(s.i) || !in_range(s.j) || s.i == s.j {
                return Err(CliError::schema(
                    ctx,
                    format!("need distinct indices in 1..={}", self.rank),
                ));
            }
            if s.k < 0 {
                return Err(CliError::schema(
                    ctx,
                    format!("k must be nonnegative, got {}", s.k),
                ));
            }
            stages.push(LatticeStage {
                i: s.i - 1,
                j: s.j - 1,
                a: parse_scalar(&s.a, tag, &ctx)?,
                k: s.k,
            });
        }
        let diag = const_from_grid(&self.diag, self.rank, tag, &format!("{context}: diag"))?;
        Ok(LatticeForm {
            rank: self.rank,
            tag,
            stages,
            diag,
        })
    }
}

impl BundleDocument {
    pub fn to_bundle(&self, context: &str) -> CliResult<WaveletFactorizationBundle> {
        check_version(self.schema_version, context)?;
        let tag = parse_field(&self.field, context)?;
        let m = self.rank;
        if m < 2 {
            return Err(CliError::schema(context, "rank must be at least 2"));
        }
        let mut paraunitary = Vec::with_capacity(self.paraunitary.len());
        for (n, v) in self.paraunitary.iter().enumerate() {
            let ctx = format!("{context}: paraunitary vector {}", n + 1);
            if v.len() != m {
                return Err(CliError::schema(ctx, format!("expected {m} entries")));
            }
            let v = v
                .iter()
                .map(|s| parse_scalar(s, tag, &ctx))
                .collect::<CliResult<Vec<_>>>()?;
            paraunitary.push(make_paraunitary(v).map_err(|e| CliError::doc(ctx, e))?);
        }
        let factors = factors_from_entries(&self.nil_factors, m, tag, context)?;
        let nil_factors =
            NilFactorization::new(m, tag, factors).map_err(|e| CliError::doc(context, e))?;
        let g = const_from_grid(&self.g, m - 1, tag, &format!("{context}: G"))?;
        let supplied = self
            .h
            .as_ref()
            .map(|h| const_from_grid(h, m, tag, &format!("{context}: H")))
            .transpose()?;
        let h = haar_matrix(m, tag, supplied.as_ref())
            .map_err(|e| CliError::doc(format!("{context}: H"), e))?;
        Ok(WaveletFactorizationBundle {
            k0: self.k0,
            paraunitary,
            nil_factors,
            g,
            h,
            declared_genus: self.declared_genus,
        })
    }
}

pub fn to_value<T: Serialize>(doc: &T) -> Value {
    serde_json::to_value(doc).expect("document types serialize")
}

/// Pretty layout with a trailing newline, as written to files.
pub fn render_pretty<T: Serialize>(doc: &T) -> String {
    json::to_pretty(&to_value(doc))
}

/// One line, as written to standard output.
pub fn render_compact<T: Serialize>(doc: &T) -> String {
    json::to_compact(&to_value(doc))
}

pub fn parse_doc<T: DeserializeOwned>(text: &str, context: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|source| CliError::Json {
        context: context.into(),
        source,
    })
}

pub fn parse_any_factorization(text: &str, context: &str) -> CliResult<AnyFactorization> {
    let value: Value = parse_doc(text, context)?;
    let is_lattice = value.as_object().is_some_and(|o| o.contains_key("stages"));
    let json_err = |source| CliError::Json {
        context: context.into(),
        source,
    };
    if is_lattice {
        serde_json::from_value(value)
            .map(AnyFactorization::Lattice)
            .map_err(json_err)
    } else {
        serde_json::from_value(value)
            .map(AnyFactorization::Nilpotent)
            .map_err(json_err)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pifactor_core::{example_pair, random_pair};

    const Q: FieldTag = FieldTag::Rational;

    fn pseu2() -> LPMatrix {
        example_pair(&[FieldScalar::one(Q), FieldScalar::one(Q)], &[1, 2])
            .unwrap()
            .c
    }

    #[test]
    fn matrix_document_round_trip() {
        let c = pseu2();
        let doc = MatrixDocument::from_matrix(&c);
        assert_eq!(
            doc.blocks.iter().map(|b| b.power).collect::<Vec<_>>(),
            [-2, -1, 0]
        );
        assert_eq!(doc.blocks[2].matrix, [["-1", "2"], ["-2", "3"]]);
        let text = render_pretty(&doc);
        let back: MatrixDocument = parse_doc(&text, "c").unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_matrix("c").unwrap(), c);
    }

    #[test]
    fn gaussian_round_trip() {
        let pair = random_pair(FieldTag::GaussianRational, 3, 3, 2, 11).unwrap();
        let doc = MatrixDocument::from_matrix(&pair.d);
        assert_eq!(doc.field, "Q(i)");
        let back: MatrixDocument = parse_doc(&render_compact(&doc), "d").unwrap();
        assert_eq!(back.to_matrix("d").unwrap(), pair.d);
    }

    #[test]
    fn zero_matrix_has_no_blocks() {
        let z = LPMatrix::zero(Q, 2);
        let doc = MatrixDocument::from_matrix(&z);
        assert!(doc.blocks.is_empty());
        assert_eq!(doc.to_matrix("z").unwrap(), z);
    }

    #[test]
    fn schema_violations_are_rejected() {
        let mut doc = MatrixDocument::from_matrix(&pseu2());
        doc.blocks.swap(0, 1);
        assert_eq!(doc.to_matrix("c").unwrap_err().code(), "SCHEMA_ERROR");

        let mut doc = MatrixDocument::from_matrix(&pseu2());
        doc.blocks[0].matrix = vec![vec!["0".into(), "0".into()], vec!["0".into(), "0".into()]];
        assert_eq!(doc.to_matrix("c").unwrap_err().code(), "SCHEMA_ERROR");

        let mut doc = MatrixDocument::from_matrix(&pseu2());
        doc.blocks[0].matrix[0][0] = "1/0".into();
        assert_eq!(doc.to_matrix("c").unwrap_err().code(), "ZERO_DENOMINATOR");

        let mut doc = MatrixDocument::from_matrix(&pseu2());
        doc.field = "R".into();
        assert_eq!(doc.to_matrix("c").unwrap_err().code(), "SCHEMA_ERROR");

        let err = parse_doc::<MatrixDocument>(
            r#"{"schema_version":1,"field":"Q","rank":1,"blocks":[],"extra":0}"#,
            "c",
        )
        .unwrap_err();
        assert_eq!(err.code(), "SCHEMA_ERROR");
        assert_eq!(
            parse_doc::<MatrixDocument>("{", "c").unwrap_err().code(),
            "PARSE_ERROR"
        );
    }

    #[test]
    fn factorization_checks_nilpotency_on_load() {
        let doc = FactorizationDocument {
            schema_version: 1,
            rank: 2,
            order_note: FACTOR_ORDER_NOTE.into(),
            factors: vec![FactorEntry {
                k: 1,
                n: vec![vec!["1".into(), "0".into()], vec!["0".into(), "0".into()]],
            }],
        };
        let err = doc.to_factorization(Q, "f").unwrap_err();
        assert_eq!((err.code(), err.exit_code()), ("NOT_NILPOTENT", 2));

        let mut doc = doc;
        doc.order_note = "right to left".into();
        assert_eq!(
            doc.to_factorization(Q, "f").unwrap_err().code(),
            "SCHEMA_ERROR"
        );
    }

    #[test]
    fn factorization_field_is_inferred() {
        let grid = |s: &[[&str; 2]; 2]| {
            s.iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect()
        };
        let mut doc = FactorizationDocument {
            schema_version: 1,
            rank: 2,
            order_note: FACTOR_ORDER_NOTE.into(),
            factors: vec![FactorEntry {
                k: 2,
                n: grid(&[["1", "-1"], ["1", "-1"]]),
            }],
        };
        assert_eq!(doc.to_factorization(Q, "f").unwrap().tag, Q);
        assert_eq!(
            doc.to_factorization(FieldTag::GaussianRational, "f")
                .unwrap()
                .tag,
            FieldTag::GaussianRational
        );
        doc.factors[0].n = grid(&[["0+1i", "1"], ["1", "0-1i"]]);
        assert_eq!(
            doc.to_factorization(Q, "f").unwrap().tag,
            FieldTag::GaussianRational
        );
    }

    #[test]
    fn lattice_indices_count_from_one() {
        let lf = pifactor_core::factor::lattice_form(&pseu2()).unwrap();
        let doc = LatticeDocument::from_lattice(&lf);
        assert!(doc.stages.iter().all(|s| s.i >= 1 && s.j >= 1));
        assert_eq!(doc.to_lattice("l").unwrap(), lf);
        let any = parse_any_factorization(&render_pretty(&doc), "l").unwrap();
        assert_eq!(any, AnyFactorization::Lattice(doc));
    }
}
