"""backstab: exact and simulated analysis of Traitors-game voting strategies."""

from .exact import (
    DEFAULT_CAP,
    EnumerationCapExceededError,
    p_faithful_collusion,
    p_faithful_collusion_mc,
    w_random,
    w_rvc,
    w_vlopt,
)
from .model import (
    InvalidProfileError,
    NoSuccessorError,
    PublicState,
    Role,
    Roster,
    TallyResult,
    break_tie_and_banish,
    detect_deviators,
    next_left,
    prescribed_vote,
    tally,
    win_check,
)
from .simulate import (
    BatchResult,
    GameConfig,
    GameOutcome,
    PunishTiming,
    RoundRecord,
    derive_game_seed,
    run_batch,
    run_game,
)
from .stats import ExactRate, RatioPoint, WilsonInterval, faithful_ratio, wilson
from .strategies import (
    RoundContext,
    StrategyProfile,
    choose_murder_target,
    decide_vote,
    pick_collusion_target,
)

__version__ = "0.1.0"

__all__ = [
    "BatchResult",
    "DEFAULT_CAP",
    "EnumerationCapExceededError",
    "ExactRate",
    "GameConfig",
    "GameOutcome",
    "InvalidProfileError",
    "NoSuccessorError",
    "PublicState",
    "PunishTiming",
    "RatioPoint",
    "Role",
    "RoundContext",
    "RoundRecord",
    "Roster",
    "StrategyProfile",
    "TallyResult",
    "WilsonInterval",
    "break_tie_and_banish",
    "choose_murder_target",
    "decide_vote",
    "derive_game_seed",
    "detect_deviators",
    "faithful_ratio",
    "next_left",
    "p_faithful_collusion",
    "p_faithful_collusion_mc",
    "pick_collusion_target",
    "prescribed_vote",
    "run_batch",
    "run_game",
    "tally",
    "w_random",
    "w_rvc",
    "w_vlopt",
    "wilson",
    "win_check",
]
