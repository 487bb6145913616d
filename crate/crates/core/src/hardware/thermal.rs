use serde::{Deserialize, Serialize};

/// CODATA value, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Exact SI definition, J/K.
pub const KB: f64 = 1.380_649e-23;

/// Bose–Einstein occupancy n_T = 1/(e^{ħω/k_BT} − 1); zero at T = 0.
pub fn bose_occupancy(temperature_k: f64, omega_rad_s: f64) -> f64 {
    assert!(temperature_k >= 0.0 && omega_rad_s > 0.0);
    if temperature_k == 0.0 {
        return 0.0;
    }
    let x = HBAR * omega_rad_s / (KB * temperature_k);
    1.0 / x.exp_m1()
}

/// Environment temperature given either in Kelvin (converted at the mode
/// frequency) or as a thermal occupancy directly.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Thermal {
    Kelvin(f64),
    Occupancy(f64),
}

impl Thermal {
    pub fn occupancy(&self, omega_rad_s: f64) -> f64 {
        match *self {
            Thermal::Kelvin(t) => bose_occupancy(t, omega_rad_s),
            Thermal::Occupancy(n) => n,
        }
    }
}
