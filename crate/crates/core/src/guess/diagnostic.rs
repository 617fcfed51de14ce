/// Size of the nonlinear system behind naive X-recursive guessing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GuessDiagnostic {
    pub equations: usize,
    pub variables: usize,
    pub n: usize,
}

impl GuessDiagnostic {
    pub fn overdetermined(&self) -> bool {
        self.equations > self.variables
    }
}

/// Counts for an order-`k` relation on terms `a(0..N)` whose coefficient
/// sequences each satisfy an unknown order-`coeff_order` recurrence.
///
/// The main relation contributes `N - k` equations and each coefficient
/// recurrence `N - k - coeff_order`. The unknowns are the `k(N - k)`
/// coefficient values plus `k·coeff_order` recurrence constants.
pub fn guess_diagnostic(k: usize, coeff_order: usize, n: usize) -> GuessDiagnostic {
    let main = n.saturating_sub(k);
    let per_coeff = n.saturating_sub(k + coeff_order);
    GuessDiagnostic {
        equations: main + k * per_coeff,
        variables: k * main + k * coeff_order,
        n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_counts() {
        for n in 10..40 {
            let d = guess_diagnostic(2, 2, n);
            assert_eq!(d.equations, 3 * n - 10);
            assert_eq!(d.variables, 2 * n);
            assert_eq!(d.overdetermined(), n > 10);
        }
        assert_eq!(guess_diagnostic(2, 2, 12).equations, 26);
        assert_eq!(guess_diagnostic(2, 2, 12).variables, 24);
    }
}
