//! `fgr`: command-line front end for the free-group subgroup toolkit.

mod output;

use std::fs;
use std::process::ExitCode;

use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fgr::abelian::{
    abelianize, abelianize_in_subgroup, is_visible_ambient, phi_matrix, transfer,
};
use fgr::constructions::{gamma_m, h_m_graph, l_m_graph, lemma33_word, w_k};
use fgr::retracts::{
    bergman_counterexample, bergman_instance, intersection_report, run_suite, SuiteBounds,
};
use fgr::stallings::{basis, coset_permutation, from_generators, rewrite_in_basis, spanning_tree};
use fgr::{CoreGraph, Edge, Error, SpanningTree, Word};

use output::{render, Format};

#[derive(Parser, Debug)]
#[command(name = "fgr", version, about = "Subgroups of free groups: Stallings graphs, transfer, retracts")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Tsv,
}

#[derive(Args, Debug, Clone)]
struct Subgroup {
    /// Ambient rank (defaults to 2, or the rank of a --graph file).
    #[arg(long)]
    rank: Option<usize>,
    /// Comma-separated generator expressions; repeat for a second subgroup.
    #[arg(long)]
    gens: Vec<String>,
    /// Graph JSON file; repeat for a second subgroup.
    #[arg(long)]
    graph: Vec<String>,
    /// Spanning tree override as `from:to:label` triples, comma separated.
    #[arg(long)]
    tree: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Fold generators (or a graph file) into a canonical core graph.
    Fold(Subgroup),
    /// Free basis read off a spanning tree.
    Basis(Subgroup),
    /// Membership test.
    Member {
        #[command(flatten)]
        sub: Subgroup,
        #[arg(long)]
        word: String,
    },
    /// Express a member in the basis of the spanning tree.
    Rewrite {
        #[command(flatten)]
        sub: Subgroup,
        #[arg(long)]
        word: String,
    },
    /// Intersect two subgroups and report on the retract question.
    Intersect(Subgroup),
    /// Visibility in F_n, or in a subgroup when one is given.
    Visible {
        #[command(flatten)]
        sub: Subgroup,
        #[arg(long)]
        word: String,
    },
    /// Transfer of a word into the abelianized finite-index subgroup.
    Transfer {
        #[command(flatten)]
        sub: Subgroup,
        #[arg(long)]
        word: String,
    },
    /// The covering graph Γ_m.
    Gamma {
        #[arg(long)]
        m: usize,
    },
    /// H_m with the tree f_0..f_{m-2} and its basis.
    Hm {
        #[arg(long)]
        m: usize,
    },
    /// L_m, the rank-m subgroup of the counterexample.
    Lm {
        #[arg(long)]
        m: usize,
    },
    /// The word w_k = x[x,y]^k.
    Wk {
        #[arg(long)]
        k: usize,
    },
    /// Closed form of w_k^2 in the basis of H_m, m = 2k + 1, checked by rewriting.
    Lemma33 {
        #[arg(long)]
        m: usize,
    },
    /// Retract-intersection counterexample in F_n with rk H = m, rk R = k.
    Bergman {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
    },
    /// Run a randomized property suite.
    Suite {
        /// One of the suite names listed by `fgr suite --help`.
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(fgr::retracts::SUITES))]
        name: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Failure of a single invocation.
#[derive(Debug)]
enum Failure {
    Domain(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Tsv => Format::Tsv,
    };
    let sub_matches = matches.subcommand().map(|(_, m)| m);
    match run(cli.verb, sub_matches) {
        Ok((value, ok)) => {
            print!("{}", render(&value, format));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

impl Subgroup {
    fn default_rank(&self) -> usize {
        self.rank.unwrap_or(2)
    }

    /// Subgroups in command-line order.
    fn subgroups(&self, matches: Option<&ArgMatches>) -> Result<Vec<CoreGraph>, Failure> {
        let mut tagged: Vec<(usize, CoreGraph)> = Vec::new();
        let index_of = |id: &str| -> Vec<usize> {
            matches
                .and_then(|m| m.indices_of(id))
                .map(|it| it.collect())
                .unwrap_or_default()
        };
        let gens_at = index_of("gens");
        for (i, text) in self.gens.iter().enumerate() {
            let rank = self.default_rank();
            let words = text
                .split(',')
                .map(|s| Word::parse(s.trim(), rank))
                .collect::<Result<Vec<_>, _>>()?;
            let g = match from_generators(rank, &words) {
                Err(Error::TrivialSubgroup) => CoreGraph::trivial(rank)?,
                other => other?,
            };
            tagged.push((gens_at.get(i).copied().unwrap_or(i), g));
        }
        let graph_at = index_of("graph");
        for (i, path) in self.graph.iter().enumerate() {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Domain(format!("cannot read {path}: {e}")))?;
            let g = CoreGraph::from_json_str(&text)?;
            if let Some(r) = self.rank {
                if r != g.ambient_rank() {
                    return Err(Error::RankMismatch(r, g.ambient_rank()).into());
                }
            }
            tagged.push((graph_at.get(i).copied().unwrap_or(usize::MAX / 2 + i), g));
        }
        tagged.sort_by_key(|(i, _)| *i);
        Ok(tagged.into_iter().map(|(_, g)| g).collect())
    }

    fn one(&self, matches: Option<&ArgMatches>) -> Result<CoreGraph, Failure> {
        let mut gs = self.subgroups(matches)?;
        if gs.len() != 1 {
            return Err(Failure::Usage(format!("expected one subgroup (--gens or --graph), got {}", gs.len())));
        }
        Ok(gs.remove(0))
    }

    fn rank_for(&self, graph: Option<&CoreGraph>) -> usize {
        graph.map(CoreGraph::ambient_rank).unwrap_or_else(|| self.default_rank())
    }

    fn spanning_tree(&self, g: &CoreGraph) -> Result<SpanningTree, Failure> {
        match &self.tree {
            None => Ok(spanning_tree(g, None)?),
            Some(text) => Ok(spanning_tree(g, Some(&parse_tree(text)?))?),
        }
    }
}

fn parse_tree(text: &str) -> Result<Vec<Edge>, Failure> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|triple| {
            let parts: Vec<&str> = triple.trim().split(':').collect();
            let nums: Option<Vec<usize>> = parts.iter().map(|p| p.parse().ok()).collect();
            match nums.as_deref() {
                Some(&[from, to, label]) => Ok(Edge::new(from, to, label)),
                _ => Err(Failure::Usage(format!("bad tree edge `{triple}`, expected from:to:label"))),
            }
        })
        .collect()
}

fn words(ws: &[Word]) -> Value {
    Value::Array(ws.iter().map(|w| json!(w.to_string())).collect())
}

fn edges(es: &[Edge]) -> Value {
    Value::Array(es.iter().map(|e| json!(format!("{}:{}:{}", e.from, e.to, e.label))).collect())
}

fn graph_summary(g: &CoreGraph) -> Value {
    json!({
        "graph": g.to_json(),
        "rank": g.subgroup_rank(),
        "index": g.index(),
    })
}

fn run(verb: Verb, matches: Option<&ArgMatches>) -> Outcome {
    let value = match verb {
        Verb::Fold(sub) => graph_summary(&sub.one(matches)?.canonicalize()),
        Verb::Basis(sub) => {
            let g = sub.one(matches)?;
            let tree = sub.spanning_tree(&g)?;
            json!({
                "basis": words(&basis(&g, &tree)?),
                "tree": edges(tree.tree_edges()),
            })
        }
        Verb::Member { sub, word } => {
            let g = sub.one(matches)?;
            let w = Word::parse(&word, g.ambient_rank())?;
            json!({ "member": g.contains(&w)? })
        }
        Verb::Rewrite { sub, word } => {
            let g = sub.one(matches)?;
            let tree = sub.spanning_tree(&g)?;
            let w = Word::parse(&word, g.ambient_rank())?;
            let rw = rewrite_in_basis(&g, &tree, &w)?;
            json!({
                "basis": words(&basis(&g, &tree)?),
                "symbols": rw.letters,
                "display": rw.to_string(),
                "abelianized": rw.exponent_sums()?,
            })
        }
        Verb::Intersect(sub) => {
            let gs = sub.subgroups(matches)?;
            if gs.len() != 2 {
                return Err(Failure::Usage(format!("intersect needs two subgroups, got {}", gs.len())));
            }
            let rep = intersection_report(&gs[0], &gs[1])?;
            serde_json::to_value(rep).expect("report serializes")
        }
        Verb::Visible { sub, word } => {
            let gs = sub.subgroups(matches)?;
            let rank = sub.rank_for(gs.first());
            let w = Word::parse(&word, rank)?;
            match gs.as_slice() {
                [] => json!({
                    "word": w.to_string(),
                    "vector": abelianize(&w)?,
                    "visible": is_visible_ambient(&w),
                }),
                [g] => {
                    let v = abelianize_in_subgroup(g, &sub.spanning_tree(g)?, &w)?;
                    json!({
                        "word": w.to_string(),
                        "vector": v,
                        "gcd": v.gcd(),
                        "visible": v.is_visible(),
                    })
                }
                _ => return Err(Failure::Usage("visible takes at most one subgroup".into())),
            }
        }
        Verb::Transfer { sub, word } => {
            let g = sub.one(matches)?;
            let tree = sub.spanning_tree(&g)?;
            let w = Word::parse(&word, g.ambient_rank())?;
            let t = transfer(&g, &tree, &w)?;
            let phi = phi_matrix(&g, &tree)?;
            let down = phi.apply(&t.entries)?;
            json!({
                "word": w.to_string(),
                "cycles": coset_permutation(&g, &w)?.cycles(),
                "basis": words(&basis(&g, &tree)?),
                "transfer": t,
                "gcd": t.gcd(),
                "visible": t.is_visible(),
                "phi": phi.rows,
                "phi_transfer": down,
                "sigma": w.sigma()?,
                "commutes": down == w.sigma()?,
            })
        }
        Verb::Gamma { m } => gamma_m(m)?.to_json(),
        Verb::Hm { m } => {
            let (g, tree) = h_m_graph(m)?;
            json!({
                "graph": g.to_json(),
                "tree": edges(tree.tree_edges()),
                "basis": words(&basis(&g, &tree)?),
                "index": g.index(),
            })
        }
        Verb::Lm { m } => {
            let g = l_m_graph(m)?;
            let tree = spanning_tree(&g, None)?;
            json!({
                "graph": g.to_json(),
                "rank": g.subgroup_rank(),
                "basis": words(&basis(&g, &tree)?),
            })
        }
        Verb::Wk { k } => json!(w_k(k)?.to_string()),
        Verb::Lemma33 { m } => {
            let expected = lemma33_word(m)?;
            let k = (m - 1) / 2;
            let (g, tree) = h_m_graph(m)?;
            let rw = rewrite_in_basis(&g, &tree, &w_k(k)?.power(2))?;
            json!({
                "m": m,
                "k": k,
                "symbols": expected.letters,
                "display": expected.to_string(),
                "matches_rewrite": rw == expected,
            })
        }
        Verb::Bergman { n, m, k } => {
            let rep = bergman_counterexample(n, m, k)?;
            let (_, r, w) = bergman_instance(n, m, k)?;
            let mut v = serde_json::to_value(rep).expect("report serializes");
            v["retract_generators"] = words(&r.section_images);
            v["w"] = json!(w.to_string());
            v["verdict"] = v["retract_verdict"].clone();
            v
        }
        Verb::Suite { name, trials, seed } => {
            let rep = run_suite(&name, trials, seed, &SuiteBounds::default())?;
            let ok = rep.all_passed();
            return Ok((serde_json::to_value(rep).expect("report serializes"), ok));
        }
    };
    Ok((value, true))
}
