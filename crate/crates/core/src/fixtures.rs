//! Built-in instances used by tests, examples and the CLI.

use crate::prefs::{parse_instance, PreferenceInstance};

/// The 4×4 worked instance whose men-proposing result leaves every man at
/// his second choice and every woman at her first.
pub const PAPER_4X4_TEXT: &str = "\
# 4 men, 4 women; men's lists then women's lists, best first
4
1 2 3 4
3 1 2 4
2 4 3 1
2 3 4 1
2 1 3 4
1 2 3 4
4 3 1 2
3 2 1 4
";

/// 2×2 instance with two stable matchings: each man's first choice is a
/// different woman, and each woman prefers the man who ranks her last.
pub const TWO_BY_TWO_TEXT: &str = "\
2
1 2
2 1
2 1
1 2
";

pub const SINGLETON_TEXT: &str = "1\n1\n1\n";

pub fn paper_4x4() -> PreferenceInstance {
    parse_instance(PAPER_4X4_TEXT).expect("built-in fixture parses")
}

pub fn two_by_two() -> PreferenceInstance {
    parse_instance(TWO_BY_TWO_TEXT).expect("built-in fixture parses")
}

pub fn singleton() -> PreferenceInstance {
    parse_instance(SINGLETON_TEXT).expect("built-in fixture parses")
}

/// Looks a fixture up by its CLI name.
pub fn by_name(name: &str) -> Option<PreferenceInstance> {
    match name {
        "paper-4x4" => Some(paper_4x4()),
        "two-by-two" => Some(two_by_two()),
        "singleton" => Some(singleton()),
        _ => None,
    }
}
