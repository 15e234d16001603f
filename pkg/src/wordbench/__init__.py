"""Train SPPMI and SGNS word embeddings and benchmark them.

Two training routes over tokenized text: a count route (window
co-occurrence counts transformed to shifted positive PMI rows) and a
prediction route (skipgram with negative sampling). Both feed a common
query layer used by two evaluation harnesses: compositional relation
(analogy) identification and similarity-vote dialect identification with a
dictionary baseline.
"""

from .cooc import CoocConfig, CoocMatrix, count_cooccurrences, merge_counts
from .corpus import (
    PreprocessConfig,
    SentenceFile,
    Vocabulary,
    build_vocabulary,
    intersect_vocabularies,
    load_vocabulary,
    normalize_sentence,
    save_vocabulary,
)
from .dialect import (
    DialectDictionary,
    DictionaryClassifier,
    EmbeddingClassifier,
    LabeledPost,
    TargetSet,
    classify_dictionary,
    classify_embedding,
    coverage,
    dedup_dictionaries,
    evaluate_dialect,
    standard_coverage,
)
from .embedspace import (
    DenseEmbeddings,
    EmbeddingSpace,
    ZeroVectorFlag,
    analogy_query,
    cosine,
    densify,
    load_text,
    nearest_neighbors,
    save_text,
)
from .errors import (
    EmptyVocabularyError,
    OovError,
    ParseError,
    TrainingError,
    ValidationError,
    WordbenchError,
)
from .releval import (
    AnalogyCategory,
    AnalogyQuestion,
    RelationReport,
    evaluate_relations,
    generate_questions,
    parse_tuple_file,
    vet_dataset,
)
from .sgns import (
    SgnsConfig,
    SgnsModel,
    analytic_gradients,
    draw_negatives,
    init_model,
    pair_step,
    train,
    train_model,
)
from .sppmi import SparseEmbeddings, SppmiConfig, build_sppmi, load_sppmi, save_sppmi, sppmi_row

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
