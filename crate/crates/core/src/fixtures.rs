//! Small models used throughout the tests and examples.

/// A segment D–E–F: red on `D`, `D-E`; blue on `E`, `F`, `E-F`.
pub const SEGMENT3: &str = include_str!("../fixtures/segment3.json");

/// A filled triangle with red edges and blue vertices and interior.
pub const TRIANGLE_ABC: &str = include_str!("../fixtures/triangle_abc.json");

/// A strip of four triangles over vertices A to F, coloured red, grey and
/// green.
pub const STRIP4: &str = include_str!("../fixtures/strip4.json");

/// One vertex carrying atom `p`.
pub const SINGLE_VERTEX: &str = include_str!("../fixtures/single_vertex.json");

/// All fixtures with a short name.
pub const ALL: [(&str, &str); 4] = [
    ("segment3", SEGMENT3),
    ("triangle_abc", TRIANGLE_ABC),
    ("strip4", STRIP4),
    ("single_vertex", SINGLE_VERTEX),
];
