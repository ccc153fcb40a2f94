use boundent_cli::config::{Family, Preset, Task};
use boundent_cli::presets::preset_config;
use boundent_cli::{parse_config, write_csv, ConfigError, Table};

#[test]
fn every_preset_round_trips_through_toml() {
    for preset in Preset::FIGURES {
        let cfg = preset_config(preset).unwrap();
        let text = cfg.to_toml();
        let back = parse_config(&text).unwrap_or_else(|e| panic!("{}: {e}\n{text}", preset.name()));
        assert_eq!(back, cfg, "{}", preset.name());
    }
}

#[test]
fn fig1_pins_the_caption_parameters() {
    let cfg = preset_config(Preset::Fig1).unwrap();
    assert_eq!(cfg.task, Task::Negativity);
    assert_eq!(cfg.system.family, Family::HarmonicNearest);
    assert_eq!(cfg.system.c, Some(0.4));
    assert_eq!(cfg.temperatures, [0.35, 0.4, 0.45]);
    assert_eq!(cfg.partitions, ["e:o", "h:h"]);
    assert!(cfg.n_values.len() > 3);
}

#[test]
fn remaining_presets_pin_their_caption_parameters() {
    let fig2 = preset_config(Preset::Fig2).unwrap();
    assert_eq!((fig2.task, fig2.system.n), (Task::Phase, Some(800)));
    assert_eq!(fig2.partitions, ["e:o", "h:h", "1:n-1"]);

    let fig3 = preset_config(Preset::Fig3).unwrap();
    assert_eq!(fig3.system.family, Family::HarmonicNextNearest);
    assert_eq!(fig3.system.n, Some(200));

    let fig4 = preset_config(Preset::Fig4).unwrap();
    assert_eq!((fig4.task, fig4.solver.m, fig4.solver.s), (Task::Limit, 10, 3));

    let fig5 = preset_config(Preset::Fig5).unwrap();
    assert_eq!((fig5.system.j, fig5.system.b), (Some(1.0), Some(1.9)));
    assert_eq!(fig5.temperatures, [2.0, 2.6]);

    let fig6 = preset_config(Preset::Fig6).unwrap();
    assert_eq!((fig6.system.n, fig6.system.b), (Some(10), Some(1.9)));
    assert_eq!(fig6.sweep.as_ref().unwrap().parameter, "j");

    let fig7 = preset_config(Preset::Fig7).unwrap();
    assert_eq!((fig7.system.n, fig7.system.j), (Some(10), Some(1.0)));
    assert_eq!(fig7.temperatures, [0.1]);
    assert_eq!(fig7.sweep.as_ref().unwrap().parameter, "b");

    let fig8 = preset_config(Preset::Fig8).unwrap();
    assert_eq!(fig8.task, Task::Certify);
    assert_eq!((fig8.system.n, fig8.system.j, fig8.system.b), (Some(10), Some(1.0), Some(2.3)));
}

#[test]
fn empty_text_is_a_parse_error() {
    assert!(matches!(parse_config(""), Err(ConfigError::Parse { .. })));
}

#[test]
fn malformed_text_reports_its_line() {
    let text = "preset = \"custom\"\ntask = \"negativity\"\n[system\nfamily = \"spin-xx\"\n";
    match parse_config(text) {
        Err(ConfigError::Parse { line, .. }) => assert_eq!(line, Some(3)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn out_of_range_coupling_names_the_precondition() {
    let text = r#"
preset = "custom"
task = "negativity"
temperatures = [0.5]
partitions = ["h:h"]

[system]
family = "harmonic-nearest"
c = 0.7
n = 32
"#;
    let err = parse_config(text).unwrap_err();
    let message = err.to_string();
    assert!(matches!(err, ConfigError::Validation { .. }));
    assert!(message.contains("system.c") && message.contains("[0, 1/2)"), "{message}");
}

#[test]
fn partition_must_fit_every_size() {
    let text = r#"
preset = "custom"
task = "negativity"
n_values = [8, 16]
temperatures = [0.5]
partitions = ["contiguous:5"]

[system]
family = "harmonic-nearest"
c = 0.2
"#;
    // m = 5 needs n/2 - 5 >= 1, which fails at n = 8
    let err = parse_config(text).unwrap_err();
    assert!(err.to_string().contains("partitions"), "{err}");
    assert!(parse_config(&text.replace("contiguous:5", "contiguous:3")).is_ok());
}

#[test]
fn spin_sizes_are_capped() {
    let text = r#"
preset = "custom"
task = "negativity"
n_values = [16]
temperatures = [1.0]
partitions = ["e:o"]

[system]
family = "spin-xx"
j = 1.0
b = 1.0
"#;
    let err = parse_config(text).unwrap_err();
    assert!(err.to_string().contains("exact-diagonalization limit"), "{err}");
}

#[test]
fn empty_table_writes_only_comments_and_header() {
    let mut buf = Vec::new();
    write_csv(&Table::new(&["n", "T", "partition", "E_l"]), &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["# natural units hbar=kB=1", "# schema_version=1", "n,T,partition,E_l"]);
}
