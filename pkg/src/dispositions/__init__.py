"""Soft-ethics preference elicitation: judge questionnaire feedback, elicit
graded dispositions, and predict responses to unseen scenarios by category.
"""

from .corpus import Corpus, load_corpus, load_corpus_file, serialize_corpus
from .elicitation import (
    Disposition,
    FeedbackRef,
    Manifestation,
    Pole,
    PoleLabelTable,
    VerdictMismatch,
    elicit,
    render_counterfactual,
)
from .engine import Engine
from .model import (
    Category,
    Dimension,
    Feedback,
    Parameter,
    Polarity,
    Response,
    Scenario,
    SchemaViolation,
    ValidationError,
    Violation,
    all_categories,
    category_of,
    validate_feedback,
    validate_scenario,
)
from .profile import (
    AgentMismatch,
    AuditRecord,
    DispositionSummary,
    DominantPole,
    PredictedResponse,
    Prediction,
    Profile,
    Vote,
    deserialize_profile,
    empty_profile,
    observe,
    predict,
    record,
    serialize_profile,
    summarize,
)
from .session import (
    CollectedRecord,
    Replay,
    Session,
    SessionComplete,
    WrongScenario,
    export_session,
    new_session,
    next_scenario,
    replay_export,
    submit_feedback,
)
from .soundness import (
    DEFAULT_CONFIG,
    Combinator,
    NeutralPolicy,
    ParameterVerdict,
    SoundnessConfig,
    SoundnessVerdict,
    ValueBand,
    Verdict,
    band_of,
    expected_band,
    sound,
)

__version__ = "0.1.0"

__all__ = [
    "AgentMismatch",
    "AuditRecord",
    "Category",
    "CollectedRecord",
    "Combinator",
    "Corpus",
    "DEFAULT_CONFIG",
    "Dimension",
    "Disposition",
    "DispositionSummary",
    "DominantPole",
    "Engine",
    "Feedback",
    "FeedbackRef",
    "Manifestation",
    "NeutralPolicy",
    "Parameter",
    "ParameterVerdict",
    "Polarity",
    "Pole",
    "PoleLabelTable",
    "PredictedResponse",
    "Prediction",
    "Profile",
    "Replay",
    "Response",
    "Scenario",
    "SchemaViolation",
    "Session",
    "SessionComplete",
    "SoundnessConfig",
    "SoundnessVerdict",
    "ValidationError",
    "ValueBand",
    "Verdict",
    "VerdictMismatch",
    "Violation",
    "Vote",
    "WrongScenario",
    "all_categories",
    "band_of",
    "category_of",
    "deserialize_profile",
    "elicit",
    "empty_profile",
    "expected_band",
    "export_session",
    "load_corpus",
    "load_corpus_file",
    "new_session",
    "next_scenario",
    "observe",
    "predict",
    "record",
    "render_counterfactual",
    "replay_export",
    "serialize_corpus",
    "serialize_profile",
    "sound",
    "submit_feedback",
    "summarize",
    "validate_feedback",
    "validate_scenario",
]
