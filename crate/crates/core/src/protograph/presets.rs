//! Built-in type descriptions.

use super::io::parse_type_description;
use super::types::TypeDescription;

const LDGM_FAMILY: &str = include_str!("../../data/ldgm_family.json");

/// Concatenation of a rate-1/2 base protograph with an LDGM tail.
///
/// One fixed check type over two fixed variable types forms the base; six
/// optimizable check types each attach to the base columns with a different
/// edge profile and to their own degree-one parity column. With `h`
/// optimizable check occurrences the design rate is `1 / (2 + h)`.
pub fn ldgm_family() -> TypeDescription {
    parse_type_description(LDGM_FAMILY).expect("built-in type description is valid")
}
