"""disflkit: corpus preparation and scoring for disfluency-robust ASR data.

The toolkit selects disfluent utterances by transcript-level rules,
rewrites partial words under four strategies, builds fraction-controlled
speaker-disjoint training mixtures, segments text into wordpieces, and
scores hypotheses with disfluency-aware normalization (WER, NWER, WERR and
S/I/D shares).
"""

from .corpus import (
    DEFAULT_HESITATIONS,
    Manifest,
    Token,
    TokenKind,
    Transcript,
    UtteranceRecord,
    parse_transcript,
    read_manifest,
    render_transcript,
    write_manifest,
)
from .errors import ToolkitError
from .filtering import Condition, FilterRule, FilterVerdict, RuleVariant, apply_filter, filter_manifest
from .metrics import (
    AlignmentResult,
    RelativeMetrics,
    TableRow,
    WerReport,
    align,
    check_table_consistency,
    relative_metrics,
    score_corpus,
    score_pair,
)
from .mixing import MixSpec, SplitSpec, build_mix, speaker_disjoint_split, take_fraction
from .reporting import best_reduction, emit_report
from .transforms import (
    DEFAULT_TAG,
    PartialWordStrategy,
    StrategyKind,
    normalize_reference,
    postprocess,
    transform,
)
from .wordpiece import Segmentation, WordpieceVocab, build_char_fallback_vocab, mark_words, segment, unmark

__version__ = "0.1.0"
