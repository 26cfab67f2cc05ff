use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "torsion", version, about = "Families, Groebner checks and torsion-order certificates")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Cap on S-pair reductions per Groebner computation.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub max_steps: usize,
    /// Cap on the number of terms of any intermediate polynomial.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_terms: usize,
    /// Reduce S-pairs and closure samples in parallel.
    #[arg(long, global = true)]
    pub parallel: bool,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Build an explicit family.
    #[command(subcommand)]
    Construct(Construct),
    /// Decide whether a theorem certifies m | Tor(X).
    #[command(subcommand)]
    Certify(Certify),
    /// Check a JSON file.
    #[command(subcommand)]
    Verify(Verify),
    /// Tabulate bounds over a bounded range.
    #[command(subcommand)]
    Table(Table),
    /// Run the built-in checks.
    Selftest,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Nm {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub m: u32,
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// f_0(n, m, N).
    F0 {
        #[command(flatten)]
        nm: Nm,
        #[arg(long = "N")]
        big_n: usize,
    },
    /// The polynomial g(n, m) in x_1..x_n.
    G {
        #[command(flatten)]
        nm: Nm,
    },
    /// The four-variable base of degree d.
    BaseN3 {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u32,
    },
    /// One double cone applied to f_0(n, m, N).
    DoubleCone {
        #[command(flatten)]
        nm: Nm,
        #[arg(long = "N")]
        big_n: usize,
        /// Variable to cone over; defaults to x_{n+1}.
        #[arg(long)]
        var: Option<String>,
    },
    /// check_f of degree d with M added variables over f_0(n, m, N).
    CheckF {
        #[command(flatten)]
        nm: Nm,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long = "M")]
        big_m: usize,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        h: Option<String>,
    },
    /// Complete intersection in x_1..x_N, y_1..y_M.
    Ci {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long = "M")]
        big_m: usize,
        #[command(flatten)]
        nm: Nm,
    },
    /// Low-index complete intersection in 4 + M variables.
    CiLow {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        #[arg(long = "M")]
        big_m: usize,
    },
    /// Hypersurface in a product of projective spaces.
    Product {
        #[arg(long, value_delimiter = ',', required = true)]
        ms: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        ds: Vec<u32>,
        #[command(flatten)]
        nm: Nm,
    },
    /// A named example.
    Fixed {
        #[arg(long)]
        name: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Certify {
    /// Complete intersection of the given degrees and dimension.
    Ci {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        #[arg(long)]
        dim: u64,
        #[arg(long)]
        m: u32,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Hypersurface of multidegree ds in P^{M_0} x ... x P^{M_s}.
    Product {
        #[arg(long, value_delimiter = ',', required = true)]
        ms: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        ds: Vec<u32>,
        #[arg(long)]
        m: u32,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Degree-d hypersurface section of Gr(l, n).
    Grass {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u32,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// S-pair check of a family file.
    Groebner { file: PathBuf },
    /// Projective-closure check of a family file.
    Closure {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Isomorphism-chain file.
    IsoChain { file: PathBuf },
    /// Rational-point witness file.
    Witness { file: PathBuf },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Range {
    #[arg(long)]
    pub from: u32,
    #[arg(long)]
    pub to: u32,
}

#[derive(Subcommand, Debug)]
pub enum Table {
    /// Closed-form Z/2 bound over d.
    #[command(name = "ci-2torsion")]
    Ci2torsion {
        #[command(flatten)]
        d: Range,
    },
    /// General bound over n for fixed m.
    CiGeneral {
        #[command(flatten)]
        n: Range,
        #[arg(long)]
        m: u32,
    },
    /// Grassmannian dimensions l(n-l) over a range for fixed d.
    Grass {
        #[command(flatten)]
        dim: Range,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 2)]
        m: u32,
    },
    /// Largest admissible M_0 over n for fixed m.
    Product {
        #[command(flatten)]
        n: Range,
        #[arg(long)]
        m: u32,
    },
}
