//! Language corpora: loading a directory-per-language layout, and generating
//! one from word-frequency lexicons.
//!
//! Layout: `train_dir/<language>/*` holds running text that is cut into
//! fixed-length chunks; `test_dir/<language>/*` holds one sentence per line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use hyperseed::{preprocess_text, SeededRng};

use crate::error::{HarnessError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusDataset {
    pub languages: Vec<String>,
    pub train: Vec<String>,
    pub train_labels: Vec<usize>,
    pub test: Vec<String>,
    pub test_labels: Vec<usize>,
    pub stats: Vec<LanguageStats>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LanguageStats {
    pub language: String,
    pub train_chunks: usize,
    /// Training files too short to yield a single chunk.
    pub short_files: usize,
    pub test_sentences: usize,
    /// Test sentences shorter than the n-gram order.
    pub short_sentences: usize,
}

#[derive(Clone, Debug)]
pub struct CorpusOptions {
    /// Languages to load, in label order. All subdirectories, sorted, when `None`.
    pub languages: Option<Vec<String>>,
    pub chunk_len: usize,
    pub ngram_n: usize,
    pub max_train_chunks: Option<usize>,
    pub max_test_sentences: Option<usize>,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        Self {
            languages: None,
            chunk_len: 1000,
            ngram_n: 3,
            max_train_chunks: None,
            max_test_sentences: None,
        }
    }
}

pub fn load_language_corpus(
    train_dir: &Path,
    test_dir: &Path,
    opts: &CorpusOptions,
) -> Result<CorpusDataset> {
    let languages = match &opts.languages {
        Some(l) => l.clone(),
        None => subdirectories(train_dir)?,
    };
    if languages.is_empty() {
        return Err(HarnessError::data(train_dir, "no language directories"));
    }
    let mut out = CorpusDataset {
        languages: languages.clone(),
        train: Vec::new(),
        train_labels: Vec::new(),
        test: Vec::new(),
        test_labels: Vec::new(),
        stats: Vec::new(),
    };
    for (label, lang) in languages.iter().enumerate() {
        let mut st = LanguageStats {
            language: lang.clone(),
            ..Default::default()
        };
        let dir = train_dir.join(lang);
        let files = files_in(&dir)?;
        if files.is_empty() {
            return Err(HarnessError::data(&dir, "empty language directory"));
        }
        'files: for f in &files {
            let text = preprocess_text(&read(f)?);
            let symbols: Vec<char> = text.chars().collect();
            if symbols.len() < opts.chunk_len {
                log::warn!(
                    "{}: shorter than {} symbols, no chunks",
                    f.display(),
                    opts.chunk_len
                );
                st.short_files += 1;
                continue;
            }
            for chunk in symbols.chunks_exact(opts.chunk_len) {
                if opts.max_train_chunks.is_some_and(|m| st.train_chunks >= m) {
                    break 'files;
                }
                out.train.push(chunk.iter().collect());
                out.train_labels.push(label);
                st.train_chunks += 1;
            }
        }
        if st.train_chunks == 0 {
            return Err(HarnessError::data(&dir, "no training chunks"));
        }

        let dir = test_dir.join(lang);
        let files = files_in(&dir)?;
        if files.is_empty() {
            return Err(HarnessError::data(&dir, "empty language directory"));
        }
        'test: for f in &files {
            for line in read(f)?.lines() {
                let sentence = preprocess_text(line);
                let sentence = sentence.trim();
                if sentence.is_empty() {
                    continue;
                }
                if sentence.chars().count() < opts.ngram_n {
                    st.short_sentences += 1;
                    continue;
                }
                if opts
                    .max_test_sentences
                    .is_some_and(|m| st.test_sentences >= m)
                {
                    break 'test;
                }
                out.test.push(sentence.to_string());
                out.test_labels.push(label);
                st.test_sentences += 1;
            }
        }
        if st.short_sentences > 0 {
            log::info!(
                "{lang}: skipped {} test sentences shorter than {}",
                st.short_sentences,
                opts.ngram_n
            );
        }
        out.stats.push(st);
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| HarnessError::io(path, e))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

fn subdirectories(dir: &Path) -> Result<Vec<String>> {
    let mut names = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| HarnessError::io(dir, e))? {
        let entry = entry.map_err(|e| HarnessError::io(dir, e))?;
        if entry.path().is_dir() {
            names.push(entry.file_name().to_string_lossy().into_owned());
        }
    }
    names.sort();
    Ok(names)
}

fn files_in(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| HarnessError::io(dir, e))? {
        let path = entry.map_err(|e| HarnessError::io(dir, e))?.path();
        if path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Word sampler following a lexicon's frequency column.
pub struct Lexicon {
    words: Vec<String>,
    cumulative: Vec<f64>,
}

impl Lexicon {
    /// Reads `word<TAB>frequency` lines.
    pub fn load(path: &Path) -> Result<Self> {
        let text = read(path)?;
        let mut words = Vec::new();
        let mut cumulative = Vec::new();
        let mut total = 0.0;
        for (k, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (word, freq) = line.split_once('\t').ok_or_else(|| HarnessError::Row {
                path: path.to_path_buf(),
                row: k + 1,
                message: "expected word<TAB>frequency".into(),
            })?;
            let freq: f64 = freq
                .trim()
                .parse()
                .ok()
                .filter(|f: &f64| *f > 0.0)
                .ok_or_else(|| HarnessError::Row {
                    path: path.to_path_buf(),
                    row: k + 1,
                    message: format!("bad frequency {freq:?}"),
                })?;
            total += freq;
            words.push(word.to_string());
            cumulative.push(total);
        }
        if words.is_empty() {
            return Err(HarnessError::data(path, "empty lexicon"));
        }
        Ok(Self { words, cumulative })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn sample(&self, rng: &mut SeededRng) -> &str {
        let t = rng.unit() * self.cumulative[self.cumulative.len() - 1];
        let k = self
            .cumulative
            .partition_point(|&c| c <= t)
            .min(self.words.len() - 1);
        &self.words[k]
    }

    /// A sentence of roughly `target` symbols: capitalized, ending in a period.
    pub fn sentence(&self, target: usize, rng: &mut SeededRng) -> String {
        let mut s = String::new();
        while s.len() < target {
            if !s.is_empty() {
                s.push(' ');
            }
            s.push_str(self.sample(rng));
        }
        let mut chars = s.chars();
        let first = chars.next().map(|c| c.to_ascii_uppercase());
        first
            .into_iter()
            .chain(chars)
            .chain(std::iter::once('.'))
            .collect()
    }
}

/// Sentence length in symbols: normal with mean 150 and deviation 90,
/// clipped to [20, 600].
fn sentence_length(rng: &mut SeededRng) -> usize {
    (150.0 + 90.0 * rng.normal()).clamp(20.0, 600.0).round() as usize
}

/// Sizes of a generated corpus.
#[derive(Clone, Debug)]
pub struct GenerateOptions {
    pub train_symbols: usize,
    pub test_sentences: usize,
}

/// Writes a synthetic corpus drawn from `lexicon_dir/<language>.tsv`:
/// `out/train/<language>/corpus.txt` holding at least `train_symbols` symbols
/// after preprocessing, and `out/test/<language>/sentences.txt` with one sentence
/// per line. Training and test text come from independent streams.
pub fn generate_corpus(
    lexicon_dir: &Path,
    out: &Path,
    languages: &[String],
    opts: &GenerateOptions,
    seed: u64,
) -> Result<()> {
    for (k, lang) in languages.iter().enumerate() {
        let lex = Lexicon::load(&lexicon_dir.join(format!("{lang}.tsv")))?;
        let base = SeededRng::new(seed).fork(k as u64);

        let mut rng = base.fork(0);
        let mut text = String::with_capacity(opts.train_symbols + 1024);
        let mut kept = 0;
        while kept < opts.train_symbols {
            let s = lex.sentence(sentence_length(&mut rng), &mut rng);
            // the full stop is dropped by preprocessing, the newline becomes a space
            kept += s.len();
            text.push_str(&s);
            text.push('\n');
        }
        write_file(&out.join("train").join(lang), "corpus.txt", &text)?;

        let mut rng = base.fork(1);
        let mut text = String::new();
        for _ in 0..opts.test_sentences {
            text.push_str(&lex.sentence(sentence_length(&mut rng), &mut rng));
            text.push('\n');
        }
        write_file(&out.join("test").join(lang), "sentences.txt", &text)?;
    }
    Ok(())
}

fn write_file(dir: &Path, name: &str, body: &str) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    let path = dir.join(name);
    let mut f = fs::File::create(&path).map_err(|e| HarnessError::io(&path, e))?;
    f.write_all(body.as_bytes())
        .map_err(|e| HarnessError::io(&path, e))
}

/// Names of the lexicons in `dir`, sorted.
pub fn lexicon_languages(dir: &Path) -> Result<Vec<String>> {
    let mut names = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| HarnessError::io(dir, e))? {
        let path = entry.map_err(|e| HarnessError::io(dir, e))?.path();
        if path.extension().is_some_and(|e| e == "tsv") {
            if let Some(stem) = path.file_stem() {
                names.push(stem.to_string_lossy().into_owned());
            }
        }
    }
    names.sort();
    Ok(names)
}
