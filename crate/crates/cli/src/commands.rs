use serde::Serialize;
use serde_json::json;
use switch_dmt::allocation::{reciprocal_bounds, PhaseCurves, StaticScheme};
use switch_dmt::ddf::ddf_table;
use switch_dmt::grid::Grid;
use switch_dmt::montecarlo::{sweep_and_fit, OutageEvent};
use switch_dmt::{bc_sym_dmt, mac_sym_dmt, ppc_dmt, ChannelMode, Error, NetworkConfig, Result};

use crate::output::csv_table;
use crate::{CurveArgs, CurveScheme, DdfArgs, Event, FigureArgs, Format, SimulateArgs, BoundArgs};

/// Rendered result of a command: the main document and an optional
/// companion summary.
pub struct Rendered {
    pub main: String,
    pub summary: Option<String>,
}

impl From<String> for Rendered {
    fn from(main: String) -> Self {
        Self { main, summary: None }
    }
}

fn num(x: f64) -> String {
    format!("{x}")
}

fn json_string(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

pub fn curve(args: &CurveArgs) -> Result<Rendered> {
    let c = match args.scheme {
        CurveScheme::Ppc => ppc_dmt(args.m, args.n)?,
        CurveScheme::MacSym => mac_sym_dmt(args.users, args.m, args.n)?,
        CurveScheme::BcSym => bc_sym_dmt(args.users, args.m, args.n)?,
    };
    Ok(match args.format {
        Format::Csv => c.to_csv(),
        Format::Json => format!("{}\n", c.to_json()),
    }
    .into())
}

fn default_r_grid(upper: f64) -> Grid {
    Grid::new(0.0, 0.005, upper).expect("static grid is valid")
}

pub fn bound(args: &BoundArgs) -> Result<Rendered> {
    let cfg = NetworkConfig::reciprocal(args.pairs, args.antennas)?;
    let grid = args.r_grid.unwrap_or_else(|| default_r_grid(0.5));
    let rows = reciprocal_bounds(args.scheme, &cfg, &grid.points())?;
    Ok(match args.format {
        Format::Csv => {
            let header = ["r", "d_lower", "d_upper", "a_star"].map(String::from);
            let body: Vec<_> = rows
                .iter()
                .map(|s| vec![num(s.r), num(s.d_lower), num(s.d_upper), num(s.a_star)])
                .collect();
            csv_table(&header, &body)
        }
        Format::Json => {
            let gain = PhaseCurves::new(args.scheme, &cfg).max_multiplexing_gain();
            json_string(&json!({
                "scheme": args.scheme,
                "pairs": cfg.pairs,
                "antennas": cfg.antennas,
                "max_multiplexing_gain_per_user": gain,
                "max_multiplexing_gain_per_pair": 2.0 * gain,
                "rows": rows,
            }))
        }
    }
    .into())
}

pub fn ddf(args: &DdfArgs) -> Result<Rendered> {
    let cfg = NetworkConfig::nonreciprocal(args.pairs, args.antennas)?;
    let grid = args
        .r_grid
        .unwrap_or_else(|| default_r_grid(1.0 / (args.pairs as f64 + 1.0)));
    let rows = ddf_table(&cfg, &grid.points())?;
    Ok(match args.format {
        Format::Csv => {
            let header = ["r", "d_ddf", "d_upper", "argmin_L"].map(String::from);
            let body: Vec<_> = rows
                .iter()
                .map(|s| vec![num(s.r), num(s.d_ddf), num(s.d_upper), s.argmin_subset.to_string()])
                .collect();
            csv_table(&header, &body)
        }
        Format::Json => json_string(&json!({
            "pairs": cfg.pairs,
            "antennas": cfg.antennas,
            "rows": rows,
        })),
    }
    .into())
}

/// Columns and rows of figure data.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub fn figure_table(args: &FigureArgs) -> Result<Table> {
    let k = args.pairs;
    let antennas = match &args.antennas {
        Some(list) if !list.is_empty() => list.clone(),
        Some(_) => return Err(Error::InvalidArgument("empty antenna list".into())),
        None if args.id == 2 => vec![6],
        None => vec![4, 5, 6],
    };
    let upper_r = if args.id == 3 { 1.0 / (k as f64 + 1.0) } else { 0.5 };
    let r_grid = Grid::new(0.0, args.step, upper_r)?.points();
    let mut header = vec!["r".to_string()];
    let mut columns: Vec<Vec<f64>> = vec![r_grid.clone()];

    match args.id {
        1 => {
            for &m in &antennas {
                let rows = reciprocal_bounds(StaticScheme::MacBc, &NetworkConfig::reciprocal(k, m)?, &r_grid)?;
                header.push(format!("lower_m{m}"));
                columns.push(rows.iter().map(|s| s.d_lower).collect());
                header.push(format!("upper_m{m}"));
                columns.push(rows.iter().map(|s| s.d_upper).collect());
            }
        }
        2 => {
            let [m] = antennas[..] else {
                return Err(Error::InvalidArgument("figure 2 takes a single antenna count".into()));
            };
            let cfg = NetworkConfig::reciprocal(k, m)?;
            let bc = reciprocal_bounds(StaticScheme::MacBc, &cfg, &r_grid)?;
            let tdma = reciprocal_bounds(StaticScheme::MacTdma, &cfg, &r_grid)?;
            header.extend(["d_macbc", "d_mactdma", "d_upper"].map(String::from));
            columns.push(bc.iter().map(|s| s.d_lower).collect());
            columns.push(tdma.iter().map(|s| s.d_lower).collect());
            columns.push(bc.iter().map(|s| s.d_upper).collect());
        }
        3 => {
            for &m in &antennas {
                let rows = ddf_table(&NetworkConfig::nonreciprocal(k, m)?, &r_grid)?;
                header.push(format!("ddf_m{m}"));
                columns.push(rows.iter().map(|s| s.d_ddf).collect());
                header.push(format!("upper_m{m}"));
                columns.push(rows.iter().map(|s| s.d_upper).collect());
            }
        }
        other => return Err(Error::InvalidArgument(format!("unknown figure id {other}"))),
    }

    let rows = (0..r_grid.len())
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect();
    Ok(Table { header, rows })
}

pub fn figure(args: &FigureArgs) -> Result<Rendered> {
    let table = figure_table(args)?;
    Ok(match args.format {
        Format::Csv => {
            let body: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|row| row.iter().map(|&x| num(x)).collect())
                .collect();
            csv_table(&table.header, &body)
        }
        Format::Json => json_string(&json!({
            "figure": args.id,
            "pairs": args.pairs,
            "columns": table.header,
            "rows": table.rows,
        })),
    }
    .into())
}

pub fn simulate(args: &SimulateArgs) -> Result<Rendered> {
    let mode = args.mode.unwrap_or(match args.event {
        Event::Ddf => ChannelMode::NonReciprocal,
        _ => ChannelMode::Reciprocal,
    });
    let cfg = NetworkConfig::new(args.pairs, args.antennas, mode)?;
    let event = match args.event {
        Event::CutsetReciprocal => OutageEvent::CutsetReciprocal,
        Event::Ddf => OutageEvent::Ddf,
        Event::StaticPhases => {
            let a = match args.split {
                Some(a) => a,
                None => PhaseCurves::new(args.scheme, &cfg).solve(args.r)?.a_star,
            };
            OutageEvent::StaticPhases { scheme: args.scheme, a }
        }
    };
    let res = sweep_and_fit(
        &event,
        args.r,
        &cfg,
        &args.snr.points(),
        args.trials,
        args.seed,
        args.workers,
    )?;
    Ok(match args.format {
        Format::Csv => Rendered { main: res.to_csv(), summary: Some(format!("{}\n", res.summary_json())) },
        Format::Json => Rendered {
            main: json_string(&json!({ "points": res.points, "summary": res.summary() })),
            summary: Some(format!("{}\n", res.summary_json())),
        },
    })
}
