use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cluster_tilt_client::{Client, ClientError};
use cluster_tilt_core::api::{self, ArMode, ObjectRef, VerifyKind, VerifyRequest};
use cluster_tilt_core::cluster::ClusterCategory;
use cluster_tilt_service::{spawn_ephemeral, AppState, Config, Running};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "cluster-tilt", version, about = "Cluster categories and cluster-tilted algebras of Dynkin quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the quiver and report its counts.
    CheckDynkin(Common),
    /// Auslander-Reiten quiver of mod H, of C, or of mod End(T)^op.
    Ar {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Mode::C)]
        mode: Mode,
    },
    /// Graded Hom space Hom_C(X, Y).
    Hom {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// List every tilting object of C.
    Tilting(Common),
    /// Quiver with relations of End(T)^op.
    Endo(Common),
    /// Exchange summands one after another; prints the last step.
    Mutate {
        #[command(flatten)]
        common: Common,
        /// Comma-separated summands, exchanged left to right.
        #[arg(long, required = true)]
        at: String,
    },
    /// Run one of the built-in checks over all relevant objects.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        common: Common,
        /// Almost complete tilting object for theorem-b.
        #[arg(long)]
        tbar: Option<String>,
        /// Single vertex for apr.
        #[arg(long)]
        vertex: Option<u32>,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        bind: SocketAddr,
        /// Directory served for non-API paths.
        #[arg(long)]
        static_dir: Option<PathBuf>,
        /// JSON file sessions are restored from and saved to.
        #[arg(long)]
        snapshot: Option<PathBuf>,
    },
    /// Compare every Hom dimension with the brute-force type A oracle.
    #[command(hide = true)]
    Oracle(Common),
}

#[derive(Args, Clone)]
struct Common {
    /// Quiver as text ("1->2 2->3") or JSON.
    #[arg(long, conflicts_with = "quiver_file", required_unless_present = "quiver_file")]
    quiver: Option<String>,
    #[arg(long)]
    quiver_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Indent JSON output.
    #[arg(long)]
    pretty: bool,
    /// Comma-separated summands; defaults to the projectives.
    #[arg(long)]
    tilting: Option<String>,
    /// Service URL; without it a private in-process service is started.
    #[arg(long)]
    server: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy)]
enum Mode {
    #[value(name = "H")]
    H,
    #[value(name = "C")]
    C,
    #[value(name = "gamma")]
    Gamma,
}

#[derive(ValueEnum, Clone, Copy)]
enum Check {
    TheoremA,
    TheoremB,
    CorollaryCount,
    Apr,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<ClientError> for Failure {
    fn from(e: ClientError) -> Self {
        Failure::Domain(format!("{e}"))
    }
}

impl From<cluster_tilt_core::Error> for Failure {
    fn from(e: cluster_tilt_core::Error) -> Self {
        Failure::Domain(format!("{e} ({})", e.code()))
    }
}

type Outcome = Result<bool, Failure>;

impl Common {
    fn quiver_text(&self) -> Result<String, Failure> {
        match (&self.quiver, &self.quiver_file) {
            (Some(q), _) => Ok(q.clone()),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map(|s| s.trim().to_string())
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display()))),
            (None, None) => Err(Failure::Usage("--quiver or --quiver-file is required".into())),
        }
    }

    fn tilting_refs(&self) -> Option<Vec<ObjectRef>> {
        self.tilting.as_deref().map(ObjectRef::list)
    }

    fn json_only(&self) -> Result<(), Failure> {
        match self.format {
            Format::Json => Ok(()),
            Format::Dot => Err(Failure::Usage("this command has no DOT output".into())),
        }
    }
}

/// A client plus the in-process service backing it, if any.
struct Connection {
    client: Client,
    local: Option<Running>,
}

impl Connection {
    async fn open(common: &Common) -> Result<Self, Failure> {
        match &common.server {
            Some(url) => Ok(Self { client: Client::new(url.clone()), local: None }),
            None => {
                let running =
                    spawn_ephemeral(Config::default()).await.map_err(|e| Failure::Domain(format!("cannot start service: {e}")))?;
                Ok(Self { client: Client::new(running.url()), local: Some(running) })
            }
        }
    }

    async fn session(&self, common: &Common) -> Result<String, Failure> {
        Ok(self.client.create_session(&common.quiver_text()?, common.tilting_refs()).await?.session)
    }

    async fn close(self) {
        if let Some(running) = self.local {
            let _ = running.shutdown().await;
        }
    }
}

impl Common {
    fn emit_json<T: Serialize>(&self, value: &T) {
        let text = if self.pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
        println!("{}", text.expect("serializable"));
    }

    fn emit(&self, value: &impl Serialize, dot: &str) {
        match self.format {
            Format::Json => self.emit_json(value),
            Format::Dot => print!("{dot}"),
        }
    }
}

async fn client_command(command: Command) -> Outcome {
    let common = match &command {
        Command::CheckDynkin(c) | Command::Tilting(c) | Command::Endo(c) => c.clone(),
        Command::Ar { common, .. } | Command::Hom { common, .. } | Command::Mutate { common, .. } | Command::Verify { common, .. } => {
            common.clone()
        }
        Command::Serve { .. } | Command::Oracle(_) => unreachable!("handled by main"),
    };
    let conn = Connection::open(&common).await?;
    let result = run(&conn, &common, command).await;
    conn.close().await;
    result
}

async fn run(conn: &Connection, common: &Common, command: Command) -> Outcome {
    let client = &conn.client;
    match command {
        Command::CheckDynkin(_) => {
            common.json_only()?;
            common.emit_json(&client.check_dynkin(&common.quiver_text()?).await?);
        }
        Command::Ar { mode, .. } => {
            let mode = match mode {
                Mode::H => ArMode::Modules,
                Mode::C => ArMode::Cluster,
                Mode::Gamma => ArMode::Gamma,
            };
            let view = client.ar(&conn.session(common).await?, mode).await?;
            common.emit(&view, &view.dot);
        }
        Command::Hom { x, y, .. } => {
            common.json_only()?;
            let id = conn.session(common).await?;
            let parse = |s: &str| s.parse().map(ObjectRef::Id).unwrap_or_else(|_| ObjectRef::Name(s.to_string()));
            common.emit_json(&client.hom(&id, &parse(&x), &parse(&y)).await?);
        }
        Command::Tilting(_) => {
            common.json_only()?;
            common.emit_json(&client.all_tilting(&conn.session(common).await?).await?);
        }
        Command::Endo(_) => {
            let view = client.endo(&conn.session(common).await?).await?;
            common.emit(&view, &view.dot);
        }
        Command::Mutate { at, .. } => {
            let id = conn.session(common).await?;
            let steps = ObjectRef::list(&at);
            if steps.is_empty() {
                return Err(Failure::Usage("--at needs at least one summand".into()));
            }
            let mut last = None;
            for step in steps {
                last = Some(client.mutate(&id, step, None).await?);
            }
            let view = last.expect("at least one step");
            common.emit(&view, &cluster_tilt_core::dot::presentation(&view.presentation));
        }
        Command::Verify { check, tbar, vertex, .. } => {
            common.json_only()?;
            let kind = match check {
                Check::TheoremA => VerifyKind::TheoremA,
                Check::TheoremB => VerifyKind::TheoremB,
                Check::CorollaryCount => VerifyKind::CorollaryCount,
                Check::Apr => VerifyKind::Apr,
            };
            let req = VerifyRequest {
                quiver: common.quiver_text()?.into(),
                tilting: common.tilting_refs(),
                tbar: tbar.as_deref().map(ObjectRef::list),
                vertex,
            };
            let report = client.verify(kind, &req).await?;
            eprintln!("{}", report.summary);
            common.emit_json(&report);
            return Ok(report.pass);
        }
        Command::Serve { .. } | Command::Oracle(_) => unreachable!("handled by main"),
    }
    Ok(true)
}

/// Runs locally; it checks the engine, so it bypasses the service.
fn oracle(common: &Common) -> Outcome {
    common.json_only()?;
    let cat = ClusterCategory::parse(&common.quiver_text()?)?;
    let report = api::oracle_compare(&cat)?;
    common.emit_json(&report);
    Ok(report.pass)
}

async fn serve(bind: SocketAddr, static_dir: Option<PathBuf>, snapshot: Option<PathBuf>) -> Outcome {
    tracing_subscriber::fmt()
        .with_writer(std::io::stderr)
        .with_ansi(std::io::IsTerminal::is_terminal(&std::io::stderr()))
        .with_env_filter(tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()))
        .init();
    let listener = tokio::net::TcpListener::bind(bind).await.map_err(|e| Failure::Usage(format!("cannot bind {bind}: {e}")))?;
    eprintln!("listening on http://{}", listener.local_addr().map_err(|e| Failure::Domain(e.to_string()))?);
    let state = AppState::new(Config { snapshot, static_dir });
    cluster_tilt_service::serve(listener, state, async {
        let _ = tokio::signal::ctrl_c().await;
    })
    .await
    .map_err(|e| Failure::Domain(e.to_string()))?;
    Ok(true)
}

#[tokio::main]
async fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Serve { bind, static_dir, snapshot } => serve(bind, static_dir, snapshot).await,
        Command::Oracle(common) => oracle(&common),
        other => client_command(other).await,
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
