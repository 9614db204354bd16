//! The four reference correlation-decay panels: GHZ and W
//! initial states, each under memoryless and memory-dominated dephasing.

use anyhow::Result;

use trispin_core::{OptimizerConfig, Regime, Scenario};

use crate::sweep::{run_sweep, Measures, SweepRow, SweepSpec};

/// The four panels: 1 = GHZ, 2 = W; a = Markov, b = non-Markov with
/// bandwidth 0.01. Coupling is 1 throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigurePanel {
    Fig1a,
    Fig1b,
    Fig2a,
    Fig2b,
}

impl FigurePanel {
    pub const ALL: [FigurePanel; 4] = [
        FigurePanel::Fig1a,
        FigurePanel::Fig1b,
        FigurePanel::Fig2a,
        FigurePanel::Fig2b,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigurePanel::Fig1a => "fig1a",
            FigurePanel::Fig1b => "fig1b",
            FigurePanel::Fig2a => "fig2a",
            FigurePanel::Fig2b => "fig2b",
        }
    }

    pub fn scenario(self) -> Scenario {
        match self {
            FigurePanel::Fig1a | FigurePanel::Fig1b => Scenario::Ghz,
            FigurePanel::Fig2a | FigurePanel::Fig2b => Scenario::W,
        }
    }

    pub fn regime(self) -> Regime {
        match self {
            FigurePanel::Fig1a | FigurePanel::Fig2a => Regime::Markov,
            FigurePanel::Fig1b | FigurePanel::Fig2b => Regime::NonMarkov,
        }
    }

    fn title(self) -> String {
        let state = match self.scenario() {
            Scenario::Ghz => "GHZ",
            Scenario::W => "W",
        };
        let regime = match self.regime() {
            Regime::Markov => "Markov dephasing",
            _ => "non-Markov dephasing (bandwidth 0.01)",
        };
        format!("{state} correlations under {regime}, coupling 1")
    }
}

impl std::str::FromStr for FigurePanel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        FigurePanel::ALL
            .into_iter()
            .find(|p| p.name() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown panel '{s}' (expected fig1a, fig1b, fig2a or fig2b)"))
    }
}

/// Sweep parameterization of one panel: dimensionless time 0..6 on 61 points,
/// normalized measures, reduced discord budget.
pub fn panel_spec(panel: FigurePanel) -> SweepSpec {
    SweepSpec {
        scenario: panel.scenario(),
        regime: panel.regime(),
        coupling: 1.0,
        bandwidth: 0.01,
        t_max: 6.0,
        points: 61,
        measures: Measures {
            tau3: true,
            discord: true,
        },
        discord_config: OptimizerConfig::reduced(),
        normalized: true,
        seed: 0,
    }
}

pub fn run_figure(panel: FigurePanel) -> Result<Vec<SweepRow>> {
    run_sweep(&panel_spec(panel))
}

/// gnuplot script rendering the analytic curves with sparse numeric overlays
/// from the CSV next to it.
pub fn plot_script(panel: FigurePanel, csv_name: &str) -> String {
    let name = panel.name();
    let title = panel.title();
    format!(
        r#"# render with: gnuplot {name}.gnuplot
set datafile separator ","
set terminal pngcairo size 800,560
set output "{name}.png"
set title "{title}"
set xlabel "coupling * t"
set ylabel "correlation (unit initial value)"
set xrange [0:6]
set yrange [-0.02:1.05]
plot "{csv_name}" every ::1 using 2:5 with lines lw 2 lc rgb "blue" title "entanglement bound ratio", \
     "{csv_name}" every ::1 using 2:7 with lines lw 2 dashtype 2 lc rgb "red" title "global discord", \
     "{csv_name}" every 4::1 using 2:4 with points pt 7 ps 0.6 lc rgb "blue" title "entanglement (numeric)", \
     "{csv_name}" every 4::1 using 2:6 with points pt 6 ps 0.6 lc rgb "red" title "discord (numeric)"
"#
    )
}
