//! JSON documents for protomatrices and type descriptions.
//!
//! Indices are 0-based. Rows of `matrix` are written one per line so the
//! files stay readable for larger protographs.

use serde::{Deserialize, Serialize};

use super::protomatrix::{Protomatrix, DEFAULT_MAX_ENTRY};
use super::types::TypeDescription;
use crate::error::{Error, Result};

fn default_max_entry() -> i64 {
    DEFAULT_MAX_ENTRY as i64
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProtomatrixDoc {
    m: i64,
    n: i64,
    #[serde(default = "default_max_entry")]
    e_p: i64,
    #[serde(default)]
    punctured: Vec<i64>,
    matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TypeDescriptionDoc {
    #[serde(rename = "K")]
    check_types: i64,
    k: i64,
    #[serde(rename = "L")]
    var_types: i64,
    l: i64,
    matrix: Vec<Vec<i64>>,
    #[serde(default)]
    punctured_vn_types: Vec<i64>,
    #[serde(default)]
    pairing: Vec<[i64; 2]>,
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    }
}

fn non_negative(object: &'static str, field: &str, value: i64) -> Result<u64> {
    u64::try_from(value).map_err(|_| Error::validation(object, format!("{field} must be non-negative, got {value}")))
}

fn index_list(object: &'static str, field: &str, values: &[i64]) -> Result<Vec<usize>> {
    values
        .iter()
        .map(|&x| non_negative(object, field, x).map(|x| x as usize))
        .collect()
}

fn entries(object: &'static str, matrix: &[Vec<i64>], rows: i64, cols: i64) -> Result<Vec<Vec<u32>>> {
    if matrix.len() as i64 != rows {
        return Err(Error::validation(object, format!("matrix has {} rows, header says {rows}", matrix.len())));
    }
    matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() as i64 != cols {
                return Err(Error::validation(
                    object,
                    format!("matrix row {i} has {} entries, header says {cols}", row.len()),
                ));
            }
            row.iter()
                .enumerate()
                .map(|(j, &b)| {
                    u32::try_from(b).map_err(|_| {
                        Error::validation(object, format!("entry ({i}, {j}) = {b} must be a non-negative integer"))
                    })
                })
                .collect()
        })
        .collect()
}

pub fn parse_protomatrix(text: &str) -> Result<Protomatrix> {
    let doc: ProtomatrixDoc = serde_json::from_str(text).map_err(parse_error)?;
    let object = "protomatrix";
    let rows = entries(object, &doc.matrix, doc.m, doc.n)?;
    let punctured = index_list(object, "punctured", &doc.punctured)?;
    let e_p = u32::try_from(doc.e_p).map_err(|_| Error::validation(object, "e_p must be a positive integer"))?;
    Protomatrix::new(rows, punctured, e_p)
}

pub fn parse_type_description(text: &str) -> Result<TypeDescription> {
    let doc: TypeDescriptionDoc = serde_json::from_str(text).map_err(parse_error)?;
    let object = "type description";
    let rows = entries(object, &doc.matrix, doc.check_types, doc.var_types)?;
    let k = non_negative(object, "k", doc.k)? as usize;
    let l = non_negative(object, "l", doc.l)? as usize;
    let punctured = index_list(object, "punctured_vn_types", &doc.punctured_vn_types)?;
    let pairing = doc
        .pairing
        .iter()
        .map(|&[cn, vn]| {
            Ok((
                non_negative(object, "pairing", cn)? as usize,
                non_negative(object, "pairing", vn)? as usize,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    TypeDescription::new(k, l, rows, punctured, pairing)
}

fn write_matrix<'a>(out: &mut String, rows: impl Iterator<Item = &'a [u32]>) {
    let rows: Vec<String> = rows
        .map(|r| serde_json::to_string(r).expect("integer rows serialize"))
        .collect();
    out.push_str("[\n    ");
    out.push_str(&rows.join(",\n    "));
    out.push_str("\n  ]");
}

pub fn serialize_protomatrix(b: &Protomatrix) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{{\n  \"m\": {},\n  \"n\": {},\n  \"e_p\": {},\n  \"punctured\": {},\n  \"matrix\": ",
        b.rows(),
        b.cols(),
        b.max_entry(),
        serde_json::to_string(b.punctured()).expect("indices serialize"),
    ));
    write_matrix(&mut out, b.rows_iter());
    out.push_str("\n}\n");
    out
}

pub fn serialize_type_description(td: &TypeDescription) -> String {
    let pairing: Vec<[usize; 2]> = td.pairing().iter().map(|&(a, b)| [a, b]).collect();
    let mut out = String::new();
    out.push_str(&format!(
        "{{\n  \"K\": {},\n  \"k\": {},\n  \"L\": {},\n  \"l\": {},\n  \"punctured_vn_types\": {},\n  \"pairing\": {},\n  \"matrix\": ",
        td.check_types(),
        td.fixed_check_types(),
        td.var_types(),
        td.fixed_var_types(),
        serde_json::to_string(td.punctured_var_types()).expect("indices serialize"),
        serde_json::to_string(&pairing).expect("pairs serialize"),
    ));
    write_matrix(&mut out, (0..td.check_types()).map(|i| td.row(i)));
    out.push_str("\n}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_entry_is_a_validation_error() {
        let text = r#"{"m":1,"n":2,"matrix":[[1,-1]]}"#;
        match parse_protomatrix(text) {
            Err(Error::Validation { invariant, .. }) => assert!(invariant.contains("non-negative")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn punctured_defaults_to_empty() {
        let b = parse_protomatrix(r#"{"m":1,"n":2,"e_p":4,"matrix":[[3,3]]}"#).unwrap();
        assert!(b.punctured().is_empty());
        assert_eq!(b.max_entry(), 4);
    }

    #[test]
    fn malformed_json_names_line() {
        let err = parse_protomatrix("{\n  \"m\": 1,\n  \"n\": oops\n}").unwrap_err();
        match err {
            Error::Parse { location, .. } => assert!(location.starts_with("line 3")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_field_is_named() {
        let err = parse_protomatrix(r#"{"m":1,"matrix":[[1,1]]}"#).unwrap_err();
        assert!(err.to_string().contains("`n`"), "{err}");
    }

    #[test]
    fn dimension_mismatch() {
        assert!(parse_protomatrix(r#"{"m":2,"n":2,"matrix":[[1,1]]}"#).is_err());
    }

    #[test]
    fn type_description_round_trip() {
        let td = TypeDescription::new(1, 2, vec![vec![3, 2, 0], vec![2, 1, 1]], vec![0], vec![(1, 2)]).unwrap();
        let text = serialize_type_description(&td);
        assert_eq!(parse_type_description(&text).unwrap(), td);
    }
}
