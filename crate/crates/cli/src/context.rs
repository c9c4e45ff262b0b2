//! Grouping input documents into independent jobs.
//!
//! A `spherical_data` or `registry_entry` document opens a job; following
//! `fan` and `points` documents attach to the open job. With `--entry` an
//! initial job for that registry entry is open from the start. Fans given
//! as documents replace the built-in fans of an entry.

use std::path::Path;
use std::sync::Arc;

use sphtrop::fan::{ColoredFan, SphericalData};
use sphtrop::puiseux::PuiseuxPoint;
use sphtrop::registry::{registry_get, RegistryEntry};

use crate::doc::{self, DataDoc, Document, EntryDoc, FanDoc, JTerm};
use crate::Status;

/// An error that ends the whole run.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    pub fn parse(message: impl Into<String>) -> Self {
        Failure {
            status: Status::ParseError,
            message: message.into(),
        }
    }

    pub fn runtime(message: impl Into<String>) -> Self {
        Failure {
            status: Status::Failed,
            message: message.into(),
        }
    }
}

/// Reads and parses every input in order; `-` names standard input, which
/// is also read when there are no inputs at all.
pub fn read_documents(
    inputs: &[impl AsRef<Path>],
    stdin: impl FnOnce() -> std::io::Result<String>,
) -> Result<Vec<(String, Vec<Document>)>, Failure> {
    let mut stdin = Some(stdin);
    let mut read_stdin = move || match stdin.take() {
        Some(f) => f().map_err(|e| Failure::runtime(format!("reading standard input: {e}"))),
        None => Ok(String::new()),
    };
    let mut texts = Vec::new();
    if inputs.is_empty() {
        texts.push(("<stdin>".to_string(), read_stdin()?));
    }
    for p in inputs {
        let p = p.as_ref();
        if p == Path::new("-") {
            texts.push(("<stdin>".to_string(), read_stdin()?));
            continue;
        }
        let text = std::fs::read_to_string(p)
            .map_err(|e| Failure::runtime(format!("reading {}: {e}", p.display())))?;
        texts.push((p.display().to_string(), text));
    }
    texts
        .into_iter()
        .map(|(name, text)| {
            doc::parse_documents(&name, &text)
                .map(|d| (name, d))
                .map_err(|e| Failure::parse(e.to_string()))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub enum Base {
    Nothing,
    Registry(Arc<RegistryEntry>),
    Data(DataDoc),
    Entry(EntryDoc),
}

#[derive(Clone, Debug)]
pub struct Job {
    pub label: String,
    pub base: Base,
    pub fans: Vec<(String, FanDoc)>,
    pub points: Vec<Vec<Vec<JTerm>>>,
}

impl Job {
    fn new(label: impl Into<String>, base: Base) -> Self {
        Job {
            label: label.into(),
            base,
            fans: Vec::new(),
            points: Vec::new(),
        }
    }
}

/// Splits the documents into jobs. Without documents or `--entry` there is
/// one empty job, so commands driven by flags alone still run once.
pub fn build_jobs(
    entry: Option<Arc<RegistryEntry>>,
    sources: Vec<(String, Vec<Document>)>,
) -> Result<Vec<Job>, Failure> {
    let mut jobs: Vec<Job> = Vec::new();
    if let Some(e) = entry {
        jobs.push(Job::new(e.name.clone(), Base::Registry(e)));
    }
    let mut open = !jobs.is_empty();
    for (source, docs) in sources {
        for (k, d) in docs.into_iter().enumerate() {
            let label = format!("{source}#{}", k + 1);
            match d {
                Document::SphericalData(d) => {
                    jobs.push(Job::new(label, Base::Data(d)));
                    open = true;
                }
                Document::RegistryEntry(e) => {
                    jobs.push(Job::new(e.name.clone(), Base::Entry(e)));
                    open = true;
                }
                Document::Fan(f) => {
                    if !open {
                        return Err(Failure::parse(format!(
                            "{label}: fan document with no spherical data before it (pass --entry or a spherical_data document)"
                        )));
                    }
                    let job = jobs.last_mut().expect("a job is open");
                    let name = f
                        .name
                        .clone()
                        .unwrap_or_else(|| format!("fan{}", job.fans.len() + 1));
                    job.fans.push((name, f));
                }
                Document::Points(p) => {
                    if !open {
                        jobs.push(Job::new(label, Base::Nothing));
                        open = true;
                    }
                    jobs.last_mut().expect("a job is open").points.extend(p.entries);
                }
                Document::CommandScript(_) => {
                    return Err(Failure::parse(format!(
                        "{label}: command_script documents are only accepted by `run`"
                    )))
                }
            }
        }
    }
    if jobs.is_empty() {
        jobs.push(Job::new("args", Base::Nothing));
    }
    Ok(jobs)
}

/// A job with its documents converted to library values.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub label: String,
    pub data: Option<SphericalData>,
    /// Present when the data is a registry entry, which supplies evaluators.
    pub entry: Option<Arc<RegistryEntry>>,
    pub fans: Vec<(String, ColoredFan)>,
    pub points: Vec<PuiseuxPoint>,
}

impl Resolved {
    pub fn data(&self) -> Result<&SphericalData, String> {
        self.data
            .as_ref()
            .ok_or_else(|| "no spherical data (pass --entry or a spherical_data document)".into())
    }

    pub fn entry(&self) -> Result<&RegistryEntry, String> {
        self.entry
            .as_deref()
            .ok_or_else(|| format!("`{}` has no semi-invariant evaluators (use --entry)", self.label))
    }
}

fn convert_fans(
    sd: &SphericalData,
    fans: &[(String, FanDoc)],
) -> Result<Vec<(String, ColoredFan)>, String> {
    fans.iter()
        .map(|(n, f)| {
            doc::to_fan(sd.dim(), f)
                .map(|f| (n.clone(), f))
                .map_err(|e| format!("fan `{n}`: {e}"))
        })
        .collect()
}

/// Converts a job, keeping only the fans named in `select` when non-empty.
pub fn resolve(job: &Job, select: &[String]) -> Result<Resolved, String> {
    let (data, entry, mut fans) = match &job.base {
        Base::Nothing => {
            if !job.fans.is_empty() {
                return Err("fans need spherical data".into());
            }
            (None, None, Vec::new())
        }
        Base::Registry(e) => {
            let fans = if job.fans.is_empty() {
                e.fans.clone()
            } else {
                convert_fans(&e.data, &job.fans)?
            };
            (Some(e.data.clone()), Some(e.clone()), fans)
        }
        Base::Data(d) => {
            let sd = doc::to_data(d)?;
            let fans = convert_fans(&sd, &job.fans)?;
            (Some(sd), None, fans)
        }
        Base::Entry(e) => {
            let sd = doc::to_data(&e.data)?;
            let mut fans = convert_fans(&sd, &e.fans.iter().enumerate().map(|(k, f)| {
                (f.name.clone().unwrap_or_else(|| format!("fan{}", k + 1)), f.clone())
            }).collect::<Vec<_>>())?;
            if !job.fans.is_empty() {
                fans = convert_fans(&sd, &job.fans)?;
            }
            // Evaluators come from the registry, and only for unchanged data.
            let entry = registry_get(&e.name)
                .ok()
                .filter(|r| r.data == sd)
                .map(Arc::new);
            (Some(sd), entry, fans)
        }
    };
    if !select.is_empty() {
        for s in select {
            if !fans.iter().any(|(n, _)| n == s) {
                let known: Vec<&str> = fans.iter().map(|(n, _)| n.as_str()).collect();
                return Err(format!("unknown fan `{s}` (known: {})", known.join(", ")));
            }
        }
        fans.retain(|(n, _)| select.contains(n));
    }
    let points = job
        .points
        .iter()
        .map(|p| doc::to_point(p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Resolved {
        label: job.label.clone(),
        data,
        entry,
        fans,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn docs(text: &str) -> Vec<(String, Vec<Document>)> {
        vec![("t".into(), doc::parse_documents("t", text).unwrap())]
    }

    #[test]
    fn fans_attach_to_the_open_data() {
        let text = r#"
            {"kind": "spherical_data", "dim": 1, "vcone_halfspaces": [], "colors": [], "basis_names": ["x"]}
            {"kind": "fan", "cones": [{"rays": [], "colors": []}]}
            {"kind": "fan", "name": "line", "cones": []}
            {"kind": "points", "entries": [[[[1, 1, 1, 1]]]]}
        "#;
        let jobs = build_jobs(None, docs(text)).unwrap();
        assert_eq!(jobs.len(), 1);
        let r = resolve(&jobs[0], &[]).unwrap();
        let names: Vec<&str> = r.fans.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["fan1", "line"]);
        assert_eq!(r.points.len(), 1);
        assert!(resolve(&jobs[0], &["nope".into()]).is_err());
    }

    #[test]
    fn orphan_fans_are_rejected() {
        let err = build_jobs(None, docs(r#"{"kind": "fan", "cones": []}"#)).unwrap_err();
        assert_eq!(err.status, Status::ParseError);
        let jobs = build_jobs(Some(Arc::new(registry_get("torus(1)").unwrap())), docs(r#"{"kind": "fan", "cones": []}"#)).unwrap();
        assert_eq!(resolve(&jobs[0], &[]).unwrap().fans.len(), 1);
    }
}
