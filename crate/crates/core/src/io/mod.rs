//! Text formats for quasigroups, strings, leader strings and reports, and
//! pixmap rendering of iterated e-transformations.

mod image;
mod report;
mod text;

pub use image::{decode_pixmap, gray_level, render_iterations, PixmapFormat};
pub use report::{
    census_from_json, census_to_json, format_attack_trace, format_census, parse_attack_record,
    AttackRecord,
};
pub use text::{
    format_leaders, format_qstring, format_qstring_compact, format_quasigroup, parse_leaders,
    parse_qstring, parse_quasigroup,
};
