//! Character tables shipped with the crate, parsed from the GCT files under
//! `data/`.

use crate::char_table::{parse_gct, CharacterTable};

macro_rules! bundled {
    ($($name:ident => $file:literal),* $(,)?) => {
        $(
            pub fn $name() -> CharacterTable {
                parse_gct(include_str!(concat!("../data/", $file)))
                    .unwrap_or_else(|e| panic!("bundled table {}: {e}", $file))
            }
        )*

        /// Every bundled table.
        pub fn all() -> Vec<CharacterTable> {
            vec![$($name()),*]
        }
    };
}

bundled! {
    c2 => "c2.gct",
    c3 => "c3.gct",
    c4 => "c4.gct",
    c5 => "c5.gct",
    s3 => "s3.gct",
    a4 => "a4.gct",
    a5 => "a5.gct",
    s5 => "s5.gct",
    q8 => "q8.gct",
    a6 => "a6.gct",
}

/// The synthetic S5 field list used by the transfer examples and tests.
pub fn s5_tame_demo_gfl() -> &'static str {
    include_str!("../data/s5_tame_demo.gfl")
}
