//! Resolution of `use` imports and assembly of `(CT, Γ, P)` triples.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Component, Path, PathBuf};
use std::sync::Arc;

use super::parser::{parse_class_file, parse_model_file, Import};
use super::Triple;
use crate::calculus::ClassTable;
use crate::diagnostics::{Code, Diagnostic, Span};
use crate::rules::Formalism;

/// Where source files come from.
pub trait SourceLoader {
    fn read(&self, path: &str) -> std::io::Result<String>;

    /// Path of `import` as written in the file at `from`: relative to the
    /// importing file's directory.
    fn resolve(&self, from: &str, import: &str) -> String {
        let base = Path::new(from).parent().unwrap_or(Path::new(""));
        normalize(&base.join(import))
    }
}

/// Lexically removes `.` and `..` components.
fn normalize(p: &Path) -> String {
    let mut out = PathBuf::new();
    for c in p.components() {
        match c {
            Component::CurDir => {}
            Component::ParentDir => {
                if !out.pop() {
                    out.push("..");
                }
            }
            other => out.push(other.as_os_str()),
        }
    }
    out.to_string_lossy().into_owned()
}

/// Reads from the file system.
#[derive(Clone, Copy, Debug, Default)]
pub struct FsLoader;

impl SourceLoader for FsLoader {
    fn read(&self, path: &str) -> std::io::Result<String> {
        std::fs::read_to_string(path)
    }
}

/// Serves files from memory, keyed by path.
#[derive(Clone, Debug, Default)]
pub struct MemoryLoader {
    files: BTreeMap<String, String>,
}

impl MemoryLoader {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, path: &str, text: &str) -> Self {
        self.files.insert(path.to_owned(), text.to_owned());
        self
    }
}

impl SourceLoader for MemoryLoader {
    fn read(&self, path: &str) -> std::io::Result<String> {
        self.files
            .get(path)
            .cloned()
            .ok_or_else(|| std::io::Error::new(std::io::ErrorKind::NotFound, "no such file"))
    }
}

fn io_error(path: &str, err: std::io::Error, span: Option<&Span>) -> Diagnostic {
    let d = Diagnostic::error(Code::Io, format!("cannot read `{path}`: {err}"));
    match span {
        Some(s) => d.with_span(s),
        None => d,
    }
}

struct Assembly<'a> {
    loader: &'a dyn SourceLoader,
    formalism: Formalism,
    ct: ClassTable,
    loaded: BTreeSet<String>,
    stack: Vec<String>,
    diags: Vec<Diagnostic>,
}

impl Assembly<'_> {
    fn import(&mut self, from: &str, import: &Import) -> Result<(), Diagnostic> {
        let path = self.loader.resolve(from, &import.path);
        if let Some(pos) = self.stack.iter().position(|p| *p == path) {
            let mut chain: Vec<&str> = self.stack[pos..].iter().map(String::as_str).collect();
            chain.push(&path);
            return Err(Diagnostic::error(Code::ImportCycle, format!("import cycle: {}", chain.join(" -> ")))
                .with_span(&import.span));
        }
        if !self.loaded.insert(path.clone()) {
            return Ok(());
        }
        let text = self.loader.read(&path).map_err(|e| io_error(&path, e, Some(&import.span)))?;
        let file = parse_class_file(&text, Some(Arc::from(path.as_str())), Some(self.formalism))?;
        self.stack.push(path.clone());
        for u in &file.uses {
            self.import(&path, u)?;
        }
        self.stack.pop();
        for class in file.classes {
            if let Some(previous) = self.ct.get(class.name.as_str()) {
                let mut msg = format!("class `{}` is declared more than once", class.name);
                if previous.span.is_known() {
                    msg.push_str(&format!(" (first at {})", previous.span));
                }
                self.diags.push(Diagnostic::error(Code::DuplicateClass, msg).with_span(&class.span));
                continue;
            }
            self.ct.insert(class);
        }
        Ok(())
    }
}

/// Loads the model file at `path` with every class file it imports,
/// transitively. Each class file is read once even if imported from
/// several places.
pub fn load_triple(loader: &dyn SourceLoader, path: &str) -> Result<Triple, Vec<Diagnostic>> {
    let text = loader.read(path).map_err(|e| vec![io_error(path, e, None)])?;
    let file = parse_model_file(&text, Some(Arc::from(path))).map_err(|d| vec![d])?;
    let mut asm = Assembly {
        loader,
        formalism: file.formalism(),
        ct: ClassTable::new(),
        loaded: BTreeSet::new(),
        stack: vec![path.to_owned()],
        diags: Vec::new(),
    };
    for u in &file.uses {
        asm.import(path, u).map_err(|d| vec![d])?;
    }
    if !asm.diags.is_empty() {
        return Err(asm.diags);
    }
    Ok(Triple {
        ct: asm.ct,
        gamma: file.gamma,
        model: file.model,
        uses: file.uses,
    })
}
