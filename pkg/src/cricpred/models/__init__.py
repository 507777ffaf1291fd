from .base import (  # noqa: F401
    FORMAT_VERSION,
    KINDS,
    ClassifierSpec,
    ModelDocument,
    TrainedClassifier,
    deserialize,
    load_document,
    make_spec,
    save_document,
    serialize,
    train,
)
from .mlp import mlp_loss_and_gradient  # noqa: F401
