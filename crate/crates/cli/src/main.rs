mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use colorpoly::autgroup::color_respecting_group;
use colorpoly::cayley::{cayley_graph, check_semidirect, graphicahedron, GenGroup};
use colorpoly::colorful::{build_poset, facets, two_faces};
use colorpoly::ecgraph::{parse_graph, EdgeColoredGraph, SimpleGraph};
use colorpoly::flagpoly::{flag_adjacency_polytope, flag_graph};
use colorpoly::monodromy::{covering_map, monodromy_cayley, monodromy_group, quotient_by_stabilizer};
use colorpoly::poset::{parse_polytope, validate_polytope, RankedPoset};
use colorpoly::topology::{classify_surface, schlafli_type};
use colorpoly::{Budget, Error};
use serde_json::{json, Value};

use report::{join, yes_no, Report};

#[derive(Parser)]
#[command(name = "colorpoly", version, about = "Colorful polytopes of edge-colored regular graphs")]
struct Cli {
    /// Print a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the parallel searches.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Largest poset that may be materialized.
    #[arg(long, global = true, default_value_t = Budget::default().max_faces)]
    max_faces: usize,
    /// Largest group that may be enumerated.
    #[arg(long, global = true, default_value_t = Budget::default().max_group_order)]
    max_group_order: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a colored graph, or with --polytope a polytope file.
    Validate {
        file: PathBuf,
        #[arg(long)]
        polytope: bool,
        /// Print the parsed polytope back in canonical form.
        #[arg(long, requires = "polytope")]
        emit: bool,
    },
    /// Build the colorful polytope and print it.
    Build {
        file: PathBuf,
        #[arg(long)]
        f_vector: bool,
        #[arg(long)]
        two_faces: bool,
    },
    /// Color-respecting automorphism group and flag orbits.
    Autgroup {
        file: PathBuf,
        #[arg(long)]
        elements: bool,
    },
    /// One facet per deleted color and component.
    Facets { file: PathBuf },
    /// Flag graph of a polytope as a colored edge list.
    Flaggraph {
        file: PathBuf,
        /// Also write the flag-adjacency polytope to this file.
        #[arg(long, value_name = "FILE")]
        polytope: Option<PathBuf>,
    },
    /// Cayley graph of a group generated by involutions.
    Cayley {
        /// `sp:<p>` (needs --edges) or `z2n:<n>`.
        #[arg(long, value_parser = parse_group)]
        group: GroupSpec,
        /// Graph on p vertices whose edges give the transpositions.
        #[arg(long, value_name = "FILE")]
        edges: Option<PathBuf>,
    },
    /// Graphicahedron of an uncolored graph.
    Graphicahedron {
        file: PathBuf,
        /// Write the Cayley graph as a colored edge list to this file.
        #[arg(long, value_name = "FILE")]
        emit: Option<PathBuf>,
    },
    /// Monodromy group, its Cayley graph and the covering of the flag-adjacency polytope.
    Monodromy {
        file: PathBuf,
        #[arg(long, value_name = "FILE")]
        emit_cayley: Option<PathBuf>,
    },
    /// Surface of a rank-3 polytope, given as a polytope or colored graph file.
    Classify { file: PathBuf },
    /// DOT rendering of a colored graph.
    Dot { file: PathBuf },
}

#[derive(Clone, Copy, Debug)]
enum GroupSpec {
    Symmetric(usize),
    ElementaryAbelian(usize),
}

fn parse_group(s: &str) -> Result<GroupSpec, String> {
    let (kind, n) = s.split_once(':').ok_or("expected sp:<p> or z2n:<n>")?;
    let n: usize = n.parse().map_err(|_| format!("`{n}` is not a number"))?;
    match kind {
        "sp" => Ok(GroupSpec::Symmetric(n)),
        "z2n" => Ok(GroupSpec::ElementaryAbelian(n)),
        _ => Err(format!("unknown group `{kind}`")),
    }
}

/// Errors reaching `main`: library errors and unreadable files.
enum Failure {
    Domain(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn read_graph(path: &Path) -> Result<EdgeColoredGraph, Failure> {
    Ok(parse_graph(&read(path)?)?)
}

fn read_polytope(path: &Path) -> Result<RankedPoset, Failure> {
    Ok(parse_polytope(&read(path)?)?)
}

fn is_polytope_text(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("rank"))
}

/// u128 counts as JSON numbers when they fit, strings otherwise.
fn big(n: u128) -> Value {
    u64::try_from(n).map(Value::from).unwrap_or_else(|_| Value::from(n.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = Budget {
        max_faces: cli.max_faces,
        max_group_order: cli.max_group_order,
        ..Budget::default()
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start thread pool: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(&cli.command, cli.json, &budget)) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            println!("ERROR {}: {e}", e.code());
            ExitCode::from(1)
        }
        Err(Failure::Io(path, e)) => {
            println!("ERROR Io: {}: {e}", path.display());
            ExitCode::from(1)
        }
    }
}

fn run(cmd: &Command, json: bool, budget: &Budget) -> Out {
    match cmd {
        Command::Validate { file, polytope, emit } => validate(file, *polytope, *emit, json),
        Command::Build {
            file,
            f_vector,
            two_faces,
        } => build(file, *f_vector, *two_faces, json, budget),
        Command::Autgroup { file, elements } => autgroup(file, *elements, json, budget),
        Command::Facets { file } => facet_list(file, json, budget),
        Command::Flaggraph { file, polytope } => flaggraph(file, polytope.as_deref(), budget),
        Command::Cayley { group, edges } => cayley(*group, edges.as_deref(), budget),
        Command::Graphicahedron { file, emit } => graphicahedron_report(file, emit.as_deref(), json, budget),
        Command::Monodromy { file, emit_cayley } => monodromy(file, emit_cayley.as_deref(), json, budget),
        Command::Classify { file } => classify(file, json, budget),
        Command::Dot { file } => Ok(read_graph(file)?.to_dot()),
    }
}

fn validate(file: &Path, polytope: bool, emit: bool, json: bool) -> Out {
    let mut r = Report::new();
    if !polytope {
        let g = read_graph(file)?;
        r.row("valid", "yes", true)
            .count("vertices", g.vertex_count())
            .count("edges", g.edge_count())
            .count("colors", g.r());
        return Ok(r.render(json));
    }
    let p = read_polytope(file)?;
    let v = validate_polytope(&p);
    if let Some(first) = v.failures.first() {
        return Err(Error::NotAPolytope(format!("{first} ({} failures)", v.failures.len())).into());
    }
    if emit {
        return Ok(p.to_text());
    }
    r.row("valid", "yes", true)
        .count("rank", p.rank())
        .list("f-vector", &p.f_vector())
        .count("sections-checked", v.sections_checked);
    Ok(r.render(json))
}

fn build(file: &Path, f_vector: bool, two: bool, json: bool, budget: &Budget) -> Out {
    let g = read_graph(file)?;
    if two {
        let faces = two_faces(&g);
        if json {
            let list: Vec<Value> = faces
                .iter()
                .map(|t| {
                    json!({
                        "colors": [g.color_name(t.colors.0), g.color_name(t.colors.1)],
                        "rep": g.vertex_name(t.rep),
                        "size": t.size,
                    })
                })
                .collect();
            return Ok(format!("{}\n", json!({ "two-faces": list })));
        }
        let mut out = String::new();
        for t in faces {
            out.push_str(&format!(
                "2-face {},{} rep={} size={}\n",
                g.color_name(t.colors.0),
                g.color_name(t.colors.1),
                g.vertex_name(t.rep),
                t.size
            ));
        }
        return Ok(out);
    }
    let p = build_poset(&g, budget)?.poset;
    if f_vector {
        let mut r = Report::new();
        r.list("f-vector", &p.f_vector());
        return Ok(r.render(json));
    }
    if json {
        return Ok(format!("{}\n", json!({ "rank": p.rank(), "f-vector": p.f_vector(), "text": p.to_text() })));
    }
    Ok(p.to_text())
}

fn autgroup(file: &Path, elements: bool, json: bool, budget: &Budget) -> Out {
    let g = read_graph(file)?;
    let group = color_respecting_group(&g, budget)?;
    let kappa = group.kappa();
    let reg = group.regularity(budget)?;
    let mut r = Report::new();
    r.count("order", group.order())
        .count("color-preserving", kappa.kernel_order)
        .count("color-image", kappa.image_order)
        .flag("color-image-full", kappa.surjective)
        .count("flag-orbits", reg.flag_orbits)
        .flag("regular", reg.regular);
    if elements {
        let mut listed = Vec::new();
        for a in group.iter() {
            let verts: Vec<&str> = a.vertex_map.images().map(|v| g.vertex_name(v)).collect();
            let cols: Vec<&str> = a.color_perm.images().map(|c| g.color_name(c)).collect();
            r.line(format!("element {} | {}", verts.join(" "), cols.join(" ")));
            listed.push(json!({ "vertices": verts, "colors": cols }));
        }
        r.row("elements", "", listed);
    }
    Ok(r.render(json))
}

fn facet_list(file: &Path, json: bool, budget: &Budget) -> Out {
    let g = read_graph(file)?;
    let mut lines = Vec::new();
    let mut list = Vec::new();
    for f in facets(&g) {
        let fv = build_poset(&f.component.graph, budget)?.poset.f_vector();
        let color = g.color_name(f.color);
        let rep = g.vertex_name(f.face.rep);
        lines.push(format!(
            "facet color={color} rep={rep} vertices={} f-vector: {}",
            f.component.graph.vertex_count(),
            join(fv.iter())
        ));
        list.push(json!({
            "color": color,
            "rep": rep,
            "vertices": f.component.graph.vertex_count(),
            "f-vector": fv,
        }));
    }
    if json {
        return Ok(format!("{}\n", json!({ "facets": list })));
    }
    Ok(lines.iter().map(|l| format!("{l}\n")).collect())
}

fn flaggraph(file: &Path, polytope: Option<&Path>, budget: &Budget) -> Out {
    let p = read_polytope(file)?;
    let fg = flag_graph(&p, budget)?;
    if let Some(out) = polytope {
        write(out, &flag_adjacency_polytope(&p, budget)?.poset.to_text())?;
    }
    Ok(fg.graph.to_text())
}

fn cayley(group: GroupSpec, edges: Option<&Path>, budget: &Budget) -> Out {
    let gg = match group {
        GroupSpec::ElementaryAbelian(n) => GenGroup::elementary_abelian(n),
        GroupSpec::Symmetric(p) => {
            let Some(path) = edges else {
                return Err(Error::DoesNotGenerate("sp:<p> needs --edges".into()).into());
            };
            let g = SimpleGraph::parse(&read(path)?)?;
            if g.vertex_count() != p {
                return Err(Error::DoesNotGenerate(format!(
                    "edge file has {} vertices, expected {p}",
                    g.vertex_count()
                ))
                .into());
            }
            GenGroup::symmetric_from_graph(&g)?
        }
    };
    Ok(cayley_graph(&gg, budget)?.graph.to_text())
}

fn graphicahedron_report(file: &Path, emit: Option<&Path>, json: bool, budget: &Budget) -> Out {
    let g = SimpleGraph::parse(&read(file)?)?;
    let (gg, cg) = graphicahedron(&g, budget)?;
    if let Some(out) = emit {
        write(out, &cg.graph.to_text())?;
    }
    let semi = check_semidirect(&gg, budget)?;
    let p = build_poset(&cg.graph, budget)?.poset;
    let mut r = Report::new();
    r.row("group-order", gg.order().to_string(), big(gg.order()))
        .count("graph-automorphisms", semi.aut_order)
        .count("color-respecting-order", semi.color_respecting_order)
        .flag("semidirect", semi.holds())
        .list("f-vector", &p.f_vector());
    if p.rank() == 3 {
        let s = classify_surface(&p)?;
        r.row("surface", s.surface.clone(), s.surface).flag("orientable", s.orientable);
    }
    Ok(r.render(json))
}

fn monodromy(file: &Path, emit: Option<&Path>, json: bool, budget: &Budget) -> Out {
    let p = read_polytope(file)?;
    let mon = monodromy_group(&p, budget)?;
    let cg = monodromy_cayley(&mon, budget)?;
    if let Some(out) = emit {
        write(out, &cg.graph.to_text())?;
    }
    let q = quotient_by_stabilizer(&mon, &cg)?;
    let (_, cov) = covering_map(&p, budget)?;
    let verdict = if cov.is_isomorphism() {
        "isomorphism"
    } else if cov.is_covering() {
        "proper"
    } else {
        "failed"
    };
    let mut r = Report::new();
    r.row("monodromy-order", mon.order().to_string(), big(mon.order()))
        .count("flags", mon.flag_count())
        .count("stabilizer-order", q.stabilizer_order)
        .flag("regular", cov.regular)
        .row("covering", verdict, verdict)
        .count("monodromy-faces", cov.monodromy_faces)
        .count("flag-adjacency-faces", cov.flag_adjacency_faces);
    Ok(r.render(json))
}

fn classify(file: &Path, json: bool, budget: &Budget) -> Out {
    let text = read(file)?;
    let p = if is_polytope_text(&text) {
        parse_polytope(&text)?
    } else {
        build_poset(&parse_graph(&text)?, budget)?.poset
    };
    let s = classify_surface(&p)?;
    let t = schlafli_type(&p)?;
    let mut r = Report::new();
    r.headline(format!(
        "surface: {} chi={} orientable={}",
        s.surface,
        s.euler,
        yes_no(s.orientable)
    ));
    if json {
        r.row("surface", "", s.surface.clone())
            .row("chi", "", s.euler)
            .flag("orientable", s.orientable);
    }
    r.list("f-vector", &s.f_vector)
        .list("face-sizes", &s.face_sizes)
        .list("vertex-degrees", &s.vertex_degrees)
        .row("type", t.to_string(), t.to_string());
    Ok(r.render(json))
}
