//! Reads transactions out of a version-control repository by driving the
//! `git` command line (or any tool with compatible output, via overridable
//! command templates).
//!
//! Merge commits are excluded; each remaining commit becomes one transaction
//! holding the before/after text of every touched source file. A file whose
//! content cannot be read is skipped with a counter, never failing the whole
//! transaction.

use serde::Deserialize;
use std::path::Path;
use std::process::Command;

use crate::error::{Error, Result};

use super::transaction::{ContentKind, Corpus, FilePair, Transaction};

const FIELD_SEP: char = '\u{1f}';
const RECORD_SEP: char = '\u{1e}';

/// Command templates for history extraction. Each template is an argv whose
/// elements may contain the placeholders `{repo}`, `{commit}`, `{parent}`,
/// and `{path}`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(default)]
pub struct VcsConfig {
    /// Only files with this extension are read.
    pub source_extension: String,
    /// Lists commits oldest-first: hash, parents, epoch seconds, and full
    /// message, separated by unit separators, one record per record
    /// separator.
    pub log_command: Vec<String>,
    /// Lists `STATUS\tPATH` lines for a commit against its parent.
    pub diff_command: Vec<String>,
    /// Same for a parentless commit.
    pub diff_root_command: Vec<String>,
    /// Prints one file's content at one commit.
    pub show_command: Vec<String>,
}

impl Default for VcsConfig {
    fn default() -> VcsConfig {
        let arg = |s: &str| s.to_string();
        VcsConfig {
            source_extension: ".java".into(),
            log_command: ["git", "-C", "{repo}", "log", "--reverse", "--no-merges",
                "--format=%H%x1f%P%x1f%at%x1f%B%x1e"]
                .map(arg)
                .to_vec(),
            diff_command: ["git", "-C", "{repo}", "diff-tree", "--no-commit-id",
                "--name-status", "-r", "--no-renames", "{parent}", "{commit}"]
                .map(arg)
                .to_vec(),
            diff_root_command: ["git", "-C", "{repo}", "diff-tree", "--no-commit-id",
                "--name-status", "-r", "--no-renames", "--root", "{commit}"]
                .map(arg)
                .to_vec(),
            show_command: ["git", "-C", "{repo}", "show", "{commit}:{path}"].map(arg).to_vec(),
        }
    }
}

impl VcsConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<VcsConfig> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("invalid history tool configuration: {e}")))
    }
}

/// What `read_history` saw besides the corpus itself.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HistoryReport {
    pub commits: usize,
    pub files: usize,
    pub unreadable_files: usize,
}

struct Substitutions<'a> {
    repo: &'a str,
    commit: &'a str,
    parent: &'a str,
    path: &'a str,
}

fn render(template: &[String], subs: &Substitutions) -> Vec<String> {
    template
        .iter()
        .map(|arg| {
            arg.replace("{repo}", subs.repo)
                .replace("{commit}", subs.commit)
                .replace("{parent}", subs.parent)
                .replace("{path}", subs.path)
        })
        .collect()
}

fn run(argv: &[String]) -> Result<Vec<u8>> {
    let (program, args) = argv
        .split_first()
        .ok_or_else(|| Error::Config("empty history command template".into()))?;
    let output = Command::new(program).args(args).output().map_err(|e| {
        Error::Environment(format!("failed to run '{program}': {e}"))
    })?;
    if !output.status.success() {
        return Err(Error::Vcs(format!(
            "'{}' failed with {}: {}",
            argv.join(" "),
            output.status,
            String::from_utf8_lossy(&output.stderr).trim()
        )));
    }
    Ok(output.stdout)
}

struct LogEntry {
    hash: String,
    first_parent: Option<String>,
    timestamp: i64,
    message: String,
}

fn parse_log(text: &str) -> Result<Vec<LogEntry>> {
    let mut entries = Vec::new();
    for record in text.split(RECORD_SEP) {
        let record = record.trim_matches(['\n', ' ']);
        if record.is_empty() {
            continue;
        }
        let fields: Vec<&str> = record.splitn(4, FIELD_SEP).collect();
        if fields.len() != 4 {
            return Err(Error::Vcs(format!(
                "malformed history record: expected 4 fields, got {}",
                fields.len()
            )));
        }
        entries.push(LogEntry {
            hash: fields[0].to_string(),
            first_parent: fields[1].split_whitespace().next().map(str::to_string),
            timestamp: fields[2]
                .parse()
                .map_err(|_| Error::Vcs(format!("bad commit timestamp '{}'", fields[2])))?,
            message: fields[3].trim_end().to_string(),
        });
    }
    Ok(entries)
}

/// Reads every non-merge commit of a repository into an unmined corpus,
/// oldest first (ties broken by commit id).
pub fn read_history(
    repo: impl AsRef<Path>,
    project: &str,
    config: &VcsConfig,
) -> Result<(Corpus, HistoryReport)> {
    let repo = repo.as_ref().to_string_lossy().into_owned();
    let mut report = HistoryReport::default();
    let base = Substitutions { repo: &repo, commit: "", parent: "", path: "" };
    let log = run(&render(&config.log_command, &base))?;
    let entries = parse_log(&String::from_utf8_lossy(&log))?;

    let mut transactions = Vec::new();
    for entry in entries {
        report.commits += 1;
        let subs = Substitutions {
            repo: &repo,
            commit: &entry.hash,
            parent: entry.first_parent.as_deref().unwrap_or(""),
            path: "",
        };
        let template = if entry.first_parent.is_some() {
            &config.diff_command
        } else {
            &config.diff_root_command
        };
        let diff = run(&render(template, &subs))?;
        let mut files = Vec::new();
        for line in String::from_utf8_lossy(&diff).lines() {
            let Some((status, path)) = line.split_once('\t') else {
                continue;
            };
            if !path.ends_with(&config.source_extension) {
                continue;
            }
            report.files += 1;
            let read_side = |commit: &str| -> Result<String> {
                let subs = Substitutions { repo: &repo, commit, parent: "", path };
                Ok(String::from_utf8_lossy(&run(&render(&config.show_command, &subs))?)
                    .into_owned())
            };
            let parent = entry.first_parent.as_deref().unwrap_or("");
            let sides = match status.chars().next() {
                Some('A') => read_side(&entry.hash).map(|after| (String::new(), after)),
                Some('D') => read_side(parent).map(|before| (before, String::new())),
                _ => read_side(parent)
                    .and_then(|before| read_side(&entry.hash).map(|after| (before, after))),
            };
            match sides {
                Ok((before, after)) => files.push(FilePair {
                    path: path.to_string(),
                    before,
                    after,
                }),
                Err(Error::Environment(e)) => return Err(Error::Environment(e)),
                Err(_) => report.unreadable_files += 1,
            }
        }
        transactions.push(Transaction {
            id: entry.hash,
            project: project.to_string(),
            message: entry.message,
            timestamp: entry.timestamp,
            content: ContentKind::Source,
            files,
            changes: None,
        });
    }
    transactions.sort_by(|a, b| (a.timestamp, &a.id).cmp(&(b.timestamp, &b.id)));
    Ok((Corpus::new(transactions), report))
}
