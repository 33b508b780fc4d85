use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "qkit", version, about = "Quantum information toolkit")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Override for numerical tolerances.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect a named state.
    State(StateArgs),
    #[command(subcommand)]
    Clone(CloneCmd),
    #[command(subcommand)]
    Channel(ChannelCmd),
    /// Teleport a qubit pure state.
    Teleport(TeleportArgs),
    /// Waiting time with and without one repeater station.
    Repeater {
        /// Transmission probability of the full link.
        #[arg(long)]
        t: f64,
    },
    #[command(subcommand)]
    Discriminate(DiscriminateCmd),
    #[command(subcommand)]
    Entropy(EntropyCmd),
    #[command(subcommand)]
    Bell(BellCmd),
    /// Check every reference value and print a pass/fail table.
    VerifyPaper,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// Registry name, e.g. psi-minus, werner:0.5, ghz.
    #[arg(required_unless_present = "list")]
    pub name: Option<String>,
    /// List registry names.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Args)]
pub struct Angles {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
}

#[derive(Debug, Subcommand)]
pub enum CloneCmd {
    /// Bužek-Hillery cloner on the spin state (θ, φ).
    Bh(Angles),
    /// Closed-form and Monte-Carlo fidelity of a trivial strategy.
    Trivial {
        /// random-new-qubit or measure-and-reprepare.
        #[arg(long, default_value = "random-new-qubit")]
        strategy: String,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ChannelCmd {
    /// Iterate the collision model.
    Collide {
        /// Excited-state weight of the reservoir qubits.
        #[arg(long)]
        p: f64,
        /// Interaction angle, c = cos φ.
        #[arg(long, allow_hyphen_values = true)]
        phi: f64,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Initial qubit state by registry name.
        #[arg(long, default_value = "plus")]
        init: String,
    },
}

#[derive(Debug, Args)]
pub struct TeleportArgs {
    #[command(flatten)]
    pub angles: Angles,
    #[arg(long, default_value_t = 1_000_000)]
    pub runs: usize,
}

/// A list of states as inline JSON or a path to a JSON file.
///
/// Items are registry names, `{"theta":..,"phi":..}`, pure states `{"dims","re","im"}`
/// with vector `re`/`im`, or operators with matrix `re`/`im`.
#[derive(Debug, Args)]
pub struct StatesInput {
    #[arg(long)]
    pub states: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub priors: Option<Vec<f64>>,
}

#[derive(Debug, Subcommand)]
pub enum DiscriminateCmd {
    /// Minimum-error discrimination of two states.
    Helstrom {
        #[command(flatten)]
        input: StatesInput,
        /// Use cos θ|0⟩ ± sin θ|1⟩ instead of --states.
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
    },
    /// Unambiguous discrimination.
    Usd {
        #[command(flatten)]
        input: StatesInput,
        /// Use cos α|H⟩ ± sin α|V⟩ instead of --states.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
    },
    /// Pretty-good measurement.
    Pgm {
        #[command(flatten)]
        input: StatesInput,
    },
    /// Quantum Chernoff exponent of two states.
    Chernoff {
        #[command(flatten)]
        input: StatesInput,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
    },
    /// Time-bin coherent-state USD with a threshold detector.
    Timebin {
        /// Mean photon number |α|².
        #[arg(long)]
        mean_photons: f64,
        #[arg(long, default_value_t = 1.0)]
        eta: f64,
        #[arg(long, default_value_t = 0.0)]
        dark: f64,
        #[arg(long)]
        cutoff: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum EntropyCmd {
    /// Von Neumann entropy in bits.
    Vn {
        /// Registry name or inline JSON state.
        #[arg(long)]
        state: String,
    },
    /// Conditional entropy S(A|B) of a bipartite state.
    Cond {
        #[arg(long)]
        state: String,
        /// Index of the conditioning subsystem.
        #[arg(long, default_value_t = 1)]
        cut: usize,
    },
    /// Holevo quantity of an ensemble.
    Holevo {
        #[command(flatten)]
        input: StatesInput,
    },
    /// Holevo quantity of the eavesdropper ensemble at error rate ε.
    Bb84 {
        #[arg(long)]
        eps: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum BellCmd {
    /// No-signaling table of a named box: pr, pr:<k>, me, d:<i>,<j>.
    Table {
        #[arg(long = "box")]
        name: String,
    },
    /// Local-polytope membership of a table given inline or as a JSON file.
    Membership {
        #[arg(long)]
        table: String,
    },
    /// CHSH value of a two-qubit state.
    Chsh {
        #[arg(long, default_value = "psi-minus")]
        state: String,
        /// `standard` or four `θ,φ` pairs separated by `;` for a, a′, b, b′.
        #[arg(long, default_value = "standard")]
        settings: String,
    },
    /// Optimal CHSH value of cos θ|00⟩ + sin θ|11⟩.
    Optimal {
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
    },
    /// CHSH value with detector efficiency η.
    Detection {
        #[arg(long)]
        eta: f64,
        /// Values when both, one or neither detector fires.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Option<Vec<f64>>,
    },
    /// GHZ expectations and the exhaustive local search.
    Ghz,
    /// Tsirelson-Landau-Masanes test on four correlators.
    Tlm {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Vec<f64>,
    },
    /// Werner weight above which CHSH is violated.
    WernerThreshold,
    /// Two PR boxes sharing one end.
    PrClone,
    /// Deterministic search for the same-input game.
    Game {
        #[arg(long)]
        inputs: usize,
        #[arg(long)]
        outputs: usize,
    },
    /// Monte-Carlo of the single-qubit local-variable model.
    Lv {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        m: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<f64>,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
    },
}
