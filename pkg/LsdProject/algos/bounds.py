"""
Closed-form regret envelope of the calibrated-block learner.
"""
import math

from core.exceptions import ConfigError, HorizonError
from core.rewards import Regime

# The envelope holds for this exploration parameter only.
ENVELOPE_ALPHA = 1.5


def regret_envelope(n_arms, d, horizon, alpha=ENVELOPE_ALPHA, regime=Regime.CONSTANT_NEGATIVE):
    """Upper bound on the regret after `horizon` steps with blocks of `d`.

    Constant-negative regime:
        K T / d + 47 d sqrt(K T log(T / d)) + (pi^2 / 3 + 1) K d^3
    General regime:
        (K + 2) T / d + 47 d sqrt(2 K T log(T / d)) + (pi^2 / 3 + 1) 2 K d^3
    """
    if d < 1 or horizon < d or horizon % d:
        raise HorizonError(f"Block length {d} does not divide the horizon {horizon}.")
    if not math.isclose(alpha, ENVELOPE_ALPHA):
        raise ConfigError(f"The envelope is stated for alpha = {ENVELOPE_ALPHA}, got {alpha}.")
    log_term = math.log(horizon / d)
    tail = (math.pi ** 2 / 3 + 1) * n_arms * d ** 3
    if Regime(regime) == Regime.GENERAL:
        return ((n_arms + 2) * horizon / d
                + 47 * d * math.sqrt(2 * n_arms * horizon * log_term)
                + 2 * tail)
    return n_arms * horizon / d + 47 * d * math.sqrt(n_arms * horizon * log_term) + tail
