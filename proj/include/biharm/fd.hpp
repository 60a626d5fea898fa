#pragma once

namespace biharm::fd {

/// Fourth-order central first derivative.
template <class F>
double d1_central4(F&& f, double t, double h) {
    return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h);
}

/// Fourth-order central second derivative.
template <class F>
double d2_central4(F&& f, double t, double h) {
    return (-f(t + 2 * h) + 16 * f(t + h) - 30 * f(t) + 16 * f(t - h) - f(t - 2 * h)) /
           (12 * h * h);
}

/// One Richardson level on the fourth-order stencils (h and h/2 pair),
/// eliminating the leading h^4 error term.
template <class F>
double d1_richardson(F&& f, double t, double h) {
    return (16 * d1_central4(f, t, h / 2) - d1_central4(f, t, h)) / 15;
}

template <class F>
double d2_richardson(F&& f, double t, double h) {
    return (16 * d2_central4(f, t, h / 2) - d2_central4(f, t, h)) / 15;
}

/// Richardson pair built upward (h and 2h) instead of downward; same
/// order, better roundoff when h is already near the conditioning floor.
template <class F>
double d1_richardson_up(F&& f, double t, double h) {
    return (16 * d1_central4(f, t, h) - d1_central4(f, t, 2 * h)) / 15;
}

template <class F>
double d2_richardson_up(F&& f, double t, double h) {
    return (16 * d2_central4(f, t, h) - d2_central4(f, t, 2 * h)) / 15;
}

} // namespace biharm::fd
