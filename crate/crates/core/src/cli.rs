//! Command-line front end. Reports are `key = value` lines with
//! `# hypothesis:` and `# warning:` comments, byte-stable for identical
//! inputs.

use std::fmt::Display;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use crate::acyl_bounds::{
    classify_edges, counting_certificate, heegaard_bound, prop1_bound, BoundsError, EdgeLabel,
};
use crate::branched::{
    carried_surface, figure14_family, parse_branched_spec, weight_cone, BranchedError,
};
use crate::constructions::{gamma_family, tunnel_bound, ConstructionError};
use crate::knot_tangles::{
    crossing_bound, decomposition_bounds, geodesic_bounds, is_alternating, parse_decomposition,
    parse_pd, GeodesicInputs, KnotError,
};
use crate::normal_surface::{
    build_surface, enumerate_vertex_surfaces, euler_characteristic, parse_vector_list, NormalError,
    NormalVector,
};
use crate::selftest;
use crate::triangulation::{parse_triangulation, Triangulation, TriangulationError};

#[derive(Parser, Debug)]
#[command(
    name = "acylbounds",
    version,
    about = "Genus bounds for closed acylindrical surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Triangulations and normal surfaces.
    #[command(subcommand)]
    Tri(TriCommand),
    /// Genus bound from a Heegaard splitting's disc complexity.
    Heegaard {
        #[arg(long)]
        g: usize,
        /// Per-disc intersection counts, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        ni: Vec<u64>,
    },
    /// Knot and link diagrams.
    #[command(subcommand)]
    Knot(KnotCommand),
    /// Branched surfaces.
    #[command(subcommand)]
    Branched(BranchedCommand),
    /// The tunnel-number-two family.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Runs the invariant suite on the bundled fixtures.
    Selftest,
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    tri: PathBuf,
    /// File of `nsv` lines; defaults to the enumerated vertex surfaces.
    surfaces: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    max_coord: u32,
}

#[derive(Subcommand, Debug)]
enum TriCommand {
    Census {
        tri: PathBuf,
    },
    Enumerate {
        tri: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_coord: u32,
    },
    Classify(SurfaceArgs),
    Certify(SurfaceArgs),
}

#[derive(Subcommand, Debug)]
enum KnotCommand {
    Bounds {
        pd: PathBuf,
    },
    Tangles {
        pd: PathBuf,
        #[arg(long)]
        dec: PathBuf,
        /// Declares the knot prime.
        #[arg(long)]
        prime: bool,
    },
    Geodesic {
        #[arg(long, allow_hyphen_values = true)]
        t: Option<i64>,
        #[arg(long)]
        g: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        ni: Vec<u64>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<i64>,
    },
}

#[derive(Subcommand, Debug)]
enum BranchedCommand {
    Cone {
        spec: PathBuf,
    },
    Carry {
        spec: PathBuf,
        /// Sector weights in file order, comma separated.
        #[arg(long, value_delimiter = ',')]
        weights: Vec<u64>,
    },
    Fig14 {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
}

#[derive(Subcommand, Debug)]
enum ConstructCommand {
    Gamma {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    Tunnel {
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
    },
}

/// A failure, reported on standard error.
#[derive(Debug)]
struct Failure {
    kind: &'static str,
    message: String,
}

macro_rules! failure_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure { kind: e.kind(), message: e.to_string() }
            }
        }
    )*};
}

failure_from!(
    TriangulationError,
    NormalError,
    BoundsError,
    KnotError,
    BranchedError,
    ConstructionError
);

/// Accumulates report lines.
#[derive(Default)]
pub struct Report {
    body: Vec<String>,
    digest: Sha256,
}

impl Report {
    pub fn kv(&mut self, key: impl Display, value: impl Display) {
        self.body.push(format!("{key} = {value}"));
    }

    pub fn hypothesis(&mut self, text: impl Display) {
        self.body.push(format!("# hypothesis: {text}"));
    }

    pub fn warning(&mut self, text: impl Display) {
        self.body.push(format!("# warning: {text}"));
    }

    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure {
            kind: "Io",
            message: format!("{}: {e}", path.display()),
        })?;
        self.digest.update(text.as_bytes());
        self.digest.update([0u8]);
        Ok(text)
    }

    fn render(self, argv: &[String]) -> String {
        let mut digest = self.digest;
        for a in argv {
            digest.update(a.as_bytes());
            digest.update([0u8]);
        }
        let hex: String = digest
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        let mut out = format!(
            "# command: acylbounds {}\n# inputs: sha256:{hex}\n",
            argv.join(" ")
        );
        for line in self.body {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

fn join<T: Display>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// Runs the command line `argv` (without the program name) and returns the
/// exit code with the text for standard output and standard error.
pub fn run_cli<S: AsRef<str>>(argv: &[S]) -> (i32, String, String) {
    let argv: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let cli =
        match Cli::try_parse_from(std::iter::once("acylbounds".to_string()).chain(argv.clone())) {
            Ok(cli) => cli,
            Err(e) => {
                let text = e.render().to_string();
                return match e.kind() {
                    clap::error::ErrorKind::DisplayHelp
                    | clap::error::ErrorKind::DisplayVersion => (0, text, String::new()),
                    _ => (2, String::new(), text),
                };
            }
        };
    let mut report = Report::default();
    let outcome = dispatch(cli.command, &mut report);
    let code_ok = match &outcome {
        Ok(ok) => *ok,
        Err(_) => false,
    };
    match outcome {
        Ok(_) => (
            if code_ok { 0 } else { 1 },
            report.render(&argv),
            String::new(),
        ),
        Err(f) => (
            1,
            String::new(),
            format!("error: {}: {}\n", f.kind, f.message),
        ),
    }
}

/// Returns whether the command succeeded; `selftest` can report failures.
fn dispatch(command: Command, r: &mut Report) -> Result<bool, Failure> {
    match command {
        Command::Tri(c) => tri(c, r)?,
        Command::Heegaard { g, ni } => {
            let h = heegaard_bound(g, &ni)?;
            r.kv("complexity", h.complexity);
            r.kv("bound_exact", h.direct);
            r.kv("bad_edge_cap", h.bad_edge_cap);
            r.kv("bad_edge_bound_exact", h.from_bad_edges);
            r.kv("bound", h.genus_bound);
            r.hypothesis("the Heegaard splitting is irreducible of genus g and complexity n");
            r.hypothesis("bounds the genus of a closed acylindrical surface");
        }
        Command::Knot(c) => knot(c, r)?,
        Command::Branched(c) => branched(c, r)?,
        Command::Construct(c) => construct(c, r)?,
        Command::Selftest => return Ok(selftest::run(r)),
    }
    Ok(true)
}

fn load_tri(path: &Path, r: &mut Report) -> Result<Triangulation, Failure> {
    Ok(parse_triangulation(&r.read(path)?)?)
}

fn surfaces(
    args: &SurfaceArgs,
    tri: &Triangulation,
    r: &mut Report,
) -> Result<Vec<NormalVector>, Failure> {
    match &args.surfaces {
        Some(p) => Ok(parse_vector_list(&r.read(p)?)?),
        None => {
            r.kv("max_coord", args.max_coord);
            Ok(enumerate_vertex_surfaces(tri, args.max_coord)?)
        }
    }
}

fn tri(c: TriCommand, r: &mut Report) -> Result<(), Failure> {
    match c {
        TriCommand::Census { tri } => {
            let t = load_tri(&tri, r)?;
            let census = t.skeleton_census();
            r.kv("tetrahedra", census.tetrahedra);
            r.kv("vertices", census.vertices);
            r.kv("edges", census.edges);
            r.kv("faces", census.faces);
            r.kv("euler", census.euler());
            r.kv("orientable", t.is_orientable());
        }
        TriCommand::Enumerate { tri, max_coord } => {
            let t = load_tri(&tri, r)?;
            let list = enumerate_vertex_surfaces(&t, max_coord)?;
            r.kv("max_coord", max_coord);
            r.kv("vertex_surfaces", list.len());
            for (i, v) in list.iter().enumerate() {
                let m = build_surface(&t, v, false)?;
                r.kv(format_args!("surface.{i}"), v);
                r.kv(
                    format_args!("surface.{i}.euler"),
                    euler_characteristic(&t, v)?,
                );
                r.kv(format_args!("surface.{i}.components"), m.components.len());
                r.kv(format_args!("surface.{i}.orientable"), m.is_orientable());
                r.kv(format_args!("surface.{i}.two_sided"), m.is_two_sided());
                if let [c] = m.components.as_slice() {
                    if let Some(g) = c.genus {
                        r.kv(format_args!("surface.{i}.genus"), g);
                    }
                }
            }
        }
        TriCommand::Classify(args) => {
            let t = load_tri(&args.tri, r)?;
            let list = surfaces(&args, &t, r)?;
            r.kv("surfaces", list.len());
            for (i, v) in list.iter().enumerate() {
                r.kv(format_args!("surface.{i}"), v);
                let cls = match classify_edges(&t, v) {
                    Ok(c) => c,
                    Err(BoundsError::OneSided) => {
                        r.kv(format_args!("surface.{i}.status"), "one-sided");
                        continue;
                    }
                    Err(e) => return Err(e.into()),
                };
                r.kv(format_args!("surface.{i}.good"), cls.count(EdgeLabel::Good));
                r.kv(format_args!("surface.{i}.fair"), cls.count(EdgeLabel::Fair));
                r.kv(format_args!("surface.{i}.bad"), cls.count(EdgeLabel::Bad));
                r.kv(
                    format_args!("surface.{i}.max_face_nongood"),
                    cls.max_face_nongood(),
                );
                r.kv(
                    format_args!("surface.{i}.good_fair_disjoint"),
                    cls.good_fair_disjoint(),
                );
                let e = join(cls.per_tet.iter().map(|x| x.bad_edges), ",");
                let f = join(cls.per_tet.iter().map(|x| x.bad_pieces), ",");
                r.kv(format_args!("surface.{i}.e_per_tet"), e);
                r.kv(format_args!("surface.{i}.f_per_tet"), f);
            }
            r.hypothesis(
                "edges are labeled on the doubled surface, the boundary of a regular neighborhood",
            );
        }
        TriCommand::Certify(args) => {
            let t = load_tri(&args.tri, r)?;
            let list = surfaces(&args, &t, r)?;
            r.kv("tetrahedra", t.tet_count());
            r.kv("bound", prop1_bound(t.tet_count() as i64)?);
            r.kv("surfaces", list.len());
            for (i, v) in list.iter().enumerate() {
                r.kv(format_args!("surface.{i}"), v);
                let c = match counting_certificate(&t, v) {
                    Ok(c) => c,
                    Err(BoundsError::OneSided) => {
                        r.kv(format_args!("surface.{i}.status"), "one-sided");
                        continue;
                    }
                    Err(e) => return Err(e.into()),
                };
                r.kv(format_args!("surface.{i}.good_total"), c.good_total);
                r.kv(format_args!("surface.{i}.fair_total"), c.fair_total);
                r.kv(format_args!("surface.{i}.bad_total"), c.bad_total);
                r.kv(format_args!("surface.{i}.rank_h1"), c.rank_h1_fbar);
                r.kv(format_args!("surface.{i}.chi_fbar"), c.chi_fbar);
                r.kv(format_args!("surface.{i}.chi_fs_bound"), c.chi_fs_bound);
                r.kv(
                    format_args!("surface.{i}.euler_accounting_holds"),
                    c.euler_accounting_holds,
                );
                r.kv(format_args!("surface.{i}.max_tet_excess"), c.max_tet_excess);
                r.kv(
                    format_args!("surface.{i}.tet_inequality_holds"),
                    c.tet_inequality_holds,
                );
                if let Some(g) = c.genus {
                    r.kv(format_args!("surface.{i}.genus"), g);
                }
                r.kv(format_args!("surface.{i}.bound"), c.bound_value);
                r.kv(format_args!("surface.{i}.verdict"), c.verdict.as_str());
            }
            r.hypothesis("surface is closed, two-sided, incompressible and acylindrical");
            r.hypothesis("surface meets the 1-skeleton minimally (not checked)");
        }
    }
    Ok(())
}

fn knot(c: KnotCommand, r: &mut Report) -> Result<(), Failure> {
    match c {
        KnotCommand::Bounds { pd } => {
            let d = parse_pd(&r.read(&pd)?)?;
            let b = crossing_bound(&d);
            r.kv("crossings", b.crossings);
            r.kv("components", d.component_count());
            r.kv("faces", d.faces().len());
            r.kv(
                "face_census",
                join(
                    d.face_census().into_iter().map(|(i, n)| format!("{i}:{n}")),
                    ",",
                ),
            );
            r.kv("alternating", is_alternating(&d));
            r.kv("total_budget", b.total_budget);
            r.kv("prop3_bound", b.bound);
            r.hypothesis("surface is closed and acylindrical in the link exterior");
        }
        KnotCommand::Tangles { pd, dec, prime } => {
            let d = parse_pd(&r.read(&pd)?)?;
            let decomposition = parse_decomposition(&r.read(&dec)?)?;
            let rep = decomposition_bounds(&d, &decomposition, prime)?;
            r.kv("tangles", rep.tangles.len());
            for t in &rep.tangles {
                r.kv(format_args!("tangle.{}.claimed", t.id), t.claimed.as_str());
                r.kv(
                    format_args!("tangle.{}.verified", t.id),
                    t.verified.as_str(),
                );
                r.kv(
                    format_args!("tangle.{}.alternating_projection", t.id),
                    t.alternating_projection,
                );
                if let Some(v) = &t.twist_vector {
                    r.kv(format_args!("tangle.{}.twist_vector", t.id), v);
                    r.kv(
                        format_args!("tangle.{}.fraction", t.id),
                        crate::knot_tangles::tangle_fraction(v),
                    );
                }
            }
            r.kv("rational", rep.rational_count);
            r.kv("alternating", rep.alternating_count);
            r.kv("knot", rep.is_knot);
            r.kv("prime", rep.prime);
            if let Some(b) = &rep.rational_bound {
                r.kv("rational_bound", b.bound);
                r.kv("rational_sharper_exact", b.sharper);
                r.kv("rational_sharper", b.sharper_floor);
            }
            if let Some(b) = rep.alternating_bound {
                r.kv("alternating_bound", b);
            }
            if rep.no_meridional_surfaces {
                r.kv("meridionally_incompressible_surfaces", "none");
            }
            for h in &rep.hypotheses {
                r.hypothesis(h);
            }
            for w in &rep.warnings {
                r.warning(w);
            }
        }
        KnotCommand::Geodesic {
            t,
            g,
            ni,
            c,
            r: rational,
        } => {
            let inputs = GeodesicInputs {
                tetrahedra: t,
                heegaard: g.map(|g| (g, ni)),
                crossings: c,
                rational_tangles: rational,
            };
            let rows = geodesic_bounds(&inputs)?;
            for row in rows {
                r.kv(
                    format_args!("geodesic.{}", row.input),
                    format_args!("{} ({} = {})", row.bound, row.formula, row.exact),
                );
            }
            r.hypothesis("surfaces are closed, embedded, disjoint and totally geodesic in a hyperbolic manifold");
        }
    }
    Ok(())
}

fn branched(c: BranchedCommand, r: &mut Report) -> Result<(), Failure> {
    match c {
        BranchedCommand::Cone { spec } => {
            let s = parse_branched_spec(&r.read(&spec)?)?;
            let cone = weight_cone(&s)?;
            r.kv("sectors", join(s.sectors.iter().map(|x| &x.id), ","));
            for (row, curve) in cone.equations.iter().zip(&s.curves) {
                r.kv(format_args!("equation.{}", curve.id), join(row, " "));
            }
            r.kv("dimension", cone.dimension);
            r.kv("rays", cone.rays.len());
            for (i, ray) in cone.rays.iter().enumerate() {
                r.kv(format_args!("ray.{i}"), join(ray, " "));
            }
        }
        BranchedCommand::Carry { spec, weights } => {
            let s = parse_branched_spec(&r.read(&spec)?)?;
            let surface = carried_surface(&s, &weights)?;
            carried_lines(&surface, r);
        }
        BranchedCommand::Fig14 { n } => {
            let (w, surface) = figure14_family(n)?;
            r.kv("n", n);
            r.kv("weights", join(&w, ","));
            r.kv("branch_equations", "satisfied");
            carried_lines(&surface, r);
            r.hypothesis("branched surface is a reconstruction consistent with the stated weights");
            r.hypothesis("incompressibility of the branched surface is not checked");
        }
    }
    Ok(())
}

fn carried_lines(s: &crate::branched::CarriedSurface, r: &mut Report) {
    r.kv("euler", s.euler);
    r.kv("components", s.component_count());
    r.kv("connected", s.is_connected());
    match s.genus() {
        Some(g) => r.kv("genus", g),
        None => {
            for (i, c) in s.components.iter().enumerate() {
                r.kv(format_args!("component.{i}.euler"), c.euler);
            }
        }
    }
}

fn construct(c: ConstructCommand, r: &mut Report) -> Result<(), Failure> {
    match c {
        ConstructCommand::Gamma { n } => {
            let f = gamma_family(n)?;
            r.kv("n", n);
            r.kv("vertices", f.graph.vertex_count);
            r.kv("edges", f.graph.edges.len());
            r.kv("betti", f.betti);
            r.kv("handlebody_genus", f.handlebody_genus);
            for (i, item) in f.checklist.iter().enumerate() {
                let state = if item.verified {
                    "VERIFIED"
                } else {
                    "UNVERIFIED"
                };
                r.kv(
                    format_args!("condition.{}", i + 1),
                    format_args!("{state}: {}", item.condition),
                );
            }
        }
        ConstructCommand::Tunnel { b, g } => {
            r.kv("b", b);
            r.kv("g", g);
            r.kv("tunnel_bound", tunnel_bound(b, g)?);
            r.hypothesis("the knot has a (b, g)-presentation");
        }
    }
    Ok(())
}
