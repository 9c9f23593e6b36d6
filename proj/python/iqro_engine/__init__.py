"""Python bindings for the Iqro' reading-course engine."""

from ._core import (
    ContentPack,
    IqroError,
    ProgressRecord,
    QuizConfig,
    QuizSession,
    action,
    alphabet_chart,
    current_question,
    finish,
    is_unlocked,
    is_valid_state,
    load_pack_dir,
    load_progress,
    navigate,
    parse_pack,
    progress_path,
    record_result,
    save_progress,
    serialize_pack,
    start_quiz,
    state,
    submit_answer,
    tap_item,
    validate_assets,
)

__all__ = [
    "ContentPack",
    "IqroError",
    "ProgressRecord",
    "QuizConfig",
    "QuizSession",
    "action",
    "alphabet_chart",
    "current_question",
    "finish",
    "is_unlocked",
    "is_valid_state",
    "load_pack_dir",
    "load_progress",
    "navigate",
    "parse_pack",
    "progress_path",
    "record_result",
    "save_progress",
    "serialize_pack",
    "start_quiz",
    "state",
    "submit_answer",
    "tap_item",
    "validate_assets",
]
