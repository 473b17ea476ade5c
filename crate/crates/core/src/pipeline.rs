//! The command-line pipeline: load, build the poset, minimise, check and
//! map answers back to cells.

use std::fs;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;

use crate::bisim::{
    branching_partition, encode_abstract, encode_concrete, quotient_lts, strong_partition,
    weak_pm_partition,
};
use crate::checker::{check_script_with, result_file_json};
use crate::complex::{cell_poset, load_simplicial_model, PosetModel};
use crate::error::{Error, Result};
use crate::logic::{parse_script, Script};
use crate::minimize::{map_back, minimal_model, rmin_via_quotient_d, MinimalModel};
use crate::random::random_simplicial_model;

/// Inputs and switches shared by the subcommands.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub input: Option<PathBuf>,
    pub script: Option<PathBuf>,
    pub out_dir: PathBuf,
    /// Explicit output file for single-output subcommands.
    pub output: Option<PathBuf>,
    pub trim_self_tau: bool,
    pub strict_atoms: bool,
    pub emit_aut: bool,
    pub emit_classes: bool,
    pub emit_minmodel: bool,
    pub on_minimal: bool,
    pub self_check: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            input: None,
            script: None,
            out_dir: PathBuf::from("."),
            output: None,
            trim_self_tau: false,
            strict_atoms: false,
            emit_aut: false,
            emit_classes: true,
            emit_minmodel: true,
            on_minimal: false,
            self_check: false,
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "model".to_string())
}

fn require_input(cfg: &PipelineConfig) -> Result<&Path> {
    cfg.input
        .as_deref()
        .ok_or_else(|| Error::InvalidParameters("no model file given".into()))
}

/// Loads a model file and builds its cell poset.
pub fn load_poset(path: &Path) -> Result<PosetModel> {
    Ok(cell_poset(&load_simplicial_model(&read(path)?)?))
}

/// Cross-checks the minimisation of `p`: the direct weak ±-refinement, the
/// concrete and abstract encodings must agree, and `R_min` must match the
/// `d` transitions of the quotient LTS.
pub fn self_check(p: &PosetModel, mm: &MinimalModel) -> Result<()> {
    let branching = mm.partition();
    if &weak_pm_partition(p) != branching {
        return Err(Error::SelfCheck(
            "weak ±-refinement disagrees with branching bisimilarity".into(),
        ));
    }
    let (abs, comps) = encode_abstract(p);
    if &comps.pull_back(&strong_partition(&abs))? != branching {
        return Err(Error::SelfCheck(
            "abstract encoding disagrees with branching bisimilarity".into(),
        ));
    }
    if rmin_via_quotient_d(p) != mm.relation() {
        return Err(Error::SelfCheck(
            "minimal relation disagrees with the quotient d-transitions".into(),
        ));
    }
    Ok(())
}

/// Writes the classes file, the minimal-model file and, when requested, the
/// concrete LTS and its quotient in `.aut` format. Returns the paths
/// written.
pub fn cmd_minimize(cfg: &PipelineConfig) -> Result<Vec<PathBuf>> {
    let input = require_input(cfg)?;
    let p = load_poset(input)?;
    let mm = minimal_model(&p);
    if cfg.self_check {
        self_check(&p, &mm)?;
    }
    let base = stem(input);
    let mut written = Vec::new();
    let mut emit = |name: String, text: &str| -> Result<()> {
        let path = cfg.out_dir.join(name);
        write(&path, text)?;
        written.push(path);
        Ok(())
    };
    if cfg.emit_classes {
        emit(format!("{base}.classes.json"), &mm.classes_json())?;
    }
    if cfg.emit_minmodel {
        emit(format!("{base}.min.json"), &mm.to_json())?;
    }
    if cfg.emit_aut {
        let l = encode_concrete(&p);
        let part = branching_partition(&l);
        let q = quotient_lts(&l, &part, cfg.trim_self_tau)?;
        emit(format!("{base}.aut"), &l.to_aut())?;
        emit(format!("{base}.min.aut"), &q.to_aut())?;
    }
    Ok(written)
}

/// Per-cell answers for every save directive, computed on the poset or on
/// its minimal model.
pub fn check_results(
    p: &PosetModel,
    script: &Script,
    on_minimal: bool,
    strict_atoms: bool,
) -> Result<IndexMap<String, Vec<bool>>> {
    if on_minimal {
        let mm = minimal_model(p);
        check_script_with(mm.kripke(), script, strict_atoms)?
            .into_iter()
            .map(|(name, s)| Ok((name, map_back(&mm, &s)?)))
            .collect()
    } else {
        Ok(check_script_with(p.kripke(), script, strict_atoms)?
            .into_iter()
            .map(|(name, s)| (name, s.as_bools().to_vec()))
            .collect())
    }
}

/// Evaluates a script and writes the result file. Without an input model
/// the script's `load model` path is used, relative to the script.
/// Returns the path written and the file contents.
pub fn cmd_check(cfg: &PipelineConfig) -> Result<(PathBuf, String)> {
    let script_path = cfg
        .script
        .as_deref()
        .ok_or_else(|| Error::InvalidParameters("no script file given".into()))?;
    let text = String::from_utf8_lossy(&read(script_path)?).into_owned();
    let script = parse_script(&text)?;
    let input = match (&cfg.input, &script.model) {
        (Some(i), _) => i.clone(),
        (None, Some(m)) => script_path.parent().unwrap_or(Path::new("")).join(m),
        (None, None) => return Err(Error::InvalidParameters("no model file given".into())),
    };
    let p = load_poset(&input)?;
    if cfg.self_check {
        let mm = minimal_model(&p);
        self_check(&p, &mm)?;
        let direct = check_results(&p, &script, false, cfg.strict_atoms)?;
        if check_results(&p, &script, true, cfg.strict_atoms)? != direct {
            return Err(Error::SelfCheck(
                "answers on the minimal model differ from the direct answers".into(),
            ));
        }
    }
    let results = check_results(&p, &script, cfg.on_minimal, cfg.strict_atoms)?;
    let json = result_file_json(&input.to_string_lossy(), &results);
    let out = cfg
        .output
        .clone()
        .unwrap_or_else(|| cfg.out_dir.join(format!("{}.results.json", stem(&input))));
    write(&out, &json)?;
    Ok((out, json))
}

/// Writes a random model file.
pub fn cmd_gen_random(
    seed: u64,
    n_vertices: usize,
    max_dim: usize,
    n_atoms: usize,
    output: &Path,
) -> Result<()> {
    let m = random_simplicial_model(seed, n_vertices, max_dim, n_atoms)?;
    write(output, &m.to_json())
}

/// Writes the concrete LTS of the model in `.aut` format.
pub fn cmd_export_aut(cfg: &PipelineConfig) -> Result<PathBuf> {
    let input = require_input(cfg)?;
    let l = encode_concrete(&load_poset(input)?);
    let out = cfg
        .output
        .clone()
        .unwrap_or_else(|| cfg.out_dir.join(format!("{}.aut", stem(input))));
    write(&out, &l.to_aut())?;
    Ok(out)
}

/// Writes the cell poset as JSON.
pub fn cmd_poset(cfg: &PipelineConfig) -> Result<PathBuf> {
    let input = require_input(cfg)?;
    let p = load_poset(input)?;
    let mut text = serde_json::to_string_pretty(&p.to_json()).expect("serialisable");
    text.push('\n');
    let out = cfg
        .output
        .clone()
        .unwrap_or_else(|| cfg.out_dir.join(format!("{}.poset.json", stem(input))));
    write(&out, &text)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn setup(doc: &str) -> (tempfile::TempDir, PipelineConfig) {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("m.json");
        fs::write(&input, doc).unwrap();
        let cfg = PipelineConfig {
            input: Some(input),
            out_dir: dir.path().join("out"),
            ..PipelineConfig::default()
        };
        (dir, cfg)
    }

    fn classes_in(path: &Path) -> usize {
        let v: serde_json::Value = serde_json::from_slice(&fs::read(path).unwrap()).unwrap();
        v["classes"].as_array().unwrap().len()
    }

    #[test]
    fn minimize_fixtures() {
        for (doc, n) in [(fixtures::SEGMENT3, 2), (fixtures::STRIP4, 4)] {
            let (_dir, cfg) = setup(doc);
            let cfg = PipelineConfig {
                emit_aut: true,
                self_check: true,
                ..cfg
            };
            let files = cmd_minimize(&cfg).unwrap();
            assert_eq!(files.len(), 4);
            assert_eq!(classes_in(&files[0]), n);
        }
    }

    #[test]
    fn malformed_model() {
        let (_dir, cfg) = setup("{ not json");
        assert!(matches!(cmd_minimize(&cfg), Err(Error::ModelJson(_))));
    }

    #[test]
    fn check_on_minimal_is_identical() {
        let (dir, cfg) = setup(fixtures::STRIP4);
        let script = dir.path().join("s.txt");
        fs::write(
            &script,
            "save \"w\" eta(ap(\"green\") | ap(\"grey\"), ap(\"green\"))\n",
        )
        .unwrap();
        let cfg = PipelineConfig {
            script: Some(script),
            self_check: true,
            ..cfg
        };
        let (_, direct) = cmd_check(&cfg).unwrap();
        let (_, minimal) = cmd_check(&PipelineConfig {
            on_minimal: true,
            ..cfg.clone()
        })
        .unwrap();
        assert_eq!(direct, minimal);
        let v: serde_json::Value = serde_json::from_str(&direct).unwrap();
        let p = cell_poset(&load_simplicial_model(fixtures::STRIP4.as_bytes()).unwrap());
        let w = &v["results"]["w"];
        assert_eq!(w[p.index_of("D").unwrap()], true);
        assert_eq!(w[p.index_of("A").unwrap()], false);
    }

    #[test]
    fn empty_script_and_load_line() {
        let (dir, _) = setup(fixtures::SEGMENT3);
        let script = dir.path().join("s.txt");
        fs::write(&script, "load model = \"m.json\"\n").unwrap();
        let cfg = PipelineConfig {
            script: Some(script),
            out_dir: dir.path().to_path_buf(),
            ..PipelineConfig::default()
        };
        let (_, json) = cmd_check(&cfg).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["results"], serde_json::json!({}));
    }

    #[test]
    fn export_and_poset() {
        let (_dir, cfg) = setup(fixtures::SEGMENT3);
        let aut = fs::read_to_string(cmd_export_aut(&cfg).unwrap()).unwrap();
        assert!(aut.starts_with("des (0,27,5)\n"));
        let poset = fs::read_to_string(cmd_poset(&cfg).unwrap()).unwrap();
        assert!(poset.contains("\"covers\""));
        let (_dir, cfg) = setup(fixtures::SINGLE_VERTEX);
        let aut = fs::read_to_string(cmd_export_aut(&cfg).unwrap()).unwrap();
        assert!(aut.starts_with("des (0,3,1)\n"));
    }

    #[test]
    fn gen_random_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
        cmd_gen_random(1, 4, 2, 2, &a).unwrap();
        cmd_gen_random(1, 4, 2, 2, &b).unwrap();
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
        assert!(load_poset(&a).is_ok());
        assert!(cmd_gen_random(1, 0, 2, 2, &a).is_err());
    }
}
