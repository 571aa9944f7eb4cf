//! Figure presets, embedded at build time from `presets/*.toml`.

use crate::error::{CliError, Result};
use crate::scenario::Scenario;

pub const PRESETS: &[(&str, &str)] = &[
    ("fig3a", include_str!("../presets/fig3a.toml")),
    ("fig3b", include_str!("../presets/fig3b.toml")),
    ("fig4", include_str!("../presets/fig4.toml")),
    ("fig5a", include_str!("../presets/fig5a.toml")),
    ("fig5b", include_str!("../presets/fig5b.toml")),
    ("fig6", include_str!("../presets/fig6.toml")),
    ("fig7", include_str!("../presets/fig7.toml")),
    ("fig8a", include_str!("../presets/fig8a.toml")),
    ("fig8b", include_str!("../presets/fig8b.toml")),
    ("fig8c", include_str!("../presets/fig8c.toml")),
    ("fig9a", include_str!("../presets/fig9a.toml")),
    ("fig9b", include_str!("../presets/fig9b.toml")),
    ("fig9c", include_str!("../presets/fig9c.toml")),
    ("fig10a", include_str!("../presets/fig10a.toml")),
    ("fig10b", include_str!("../presets/fig10b.toml")),
    ("fig10c", include_str!("../presets/fig10c.toml")),
    ("figT-top", include_str!("../presets/figT-top.toml")),
    ("figT-bottom", include_str!("../presets/figT-bottom.toml")),
];

pub fn preset_names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(n, _)| *n)
}

/// The annotated TOML source of a preset.
pub fn preset_source(name: &str) -> Result<&'static str> {
    PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| *s)
        .ok_or_else(|| {
            let known: Vec<_> = preset_names().collect();
            CliError::Config(format!("unknown preset `{name}` (known: {})", known.join(", ")))
        })
}

pub fn preset(name: &str) -> Result<Scenario> {
    Scenario::from_toml_str(preset_source(name)?)
}
