pub mod poly;
pub mod number_field;
pub mod parser;
pub mod elimination;
pub mod singularities;
pub mod numerology;
pub mod zariski;
pub mod triple_plane;
pub mod versal;
pub mod cli;

pub(crate) fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
