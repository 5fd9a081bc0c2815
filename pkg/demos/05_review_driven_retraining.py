"""Review-driven retraining: moderator labels retrain the filter classifier.

The filter starts as the weight-free linear rule. As reviews accumulate they
become training labels; retraining swaps in a learned model whose scores
sharpen the queue. Reviews keep flowing, so every retrain sees more truth.
"""

import numpy as np

from vidmod import classifier, corpus
from vidmod.store import Evidence, ReviewLabel

taxonomy = corpus.default_taxonomy()
records = corpus.synthesize_corpus(150, 0.4, taxonomy, seed=13)
pool, held_out = records[:120], records[120:]

features = {r.video_id: classifier.featurize(r, taxonomy) for r in records}


def held_out_accuracy(model):
    correct = 0
    for r in held_out:
        score = classifier.predict(model, features[r.video_id])
        correct += (score > 0.5) == (r.ground_truth != "normal")
    return correct / len(held_out)


def simulated_review(record, i):
    evidence = (
        Evidence() if record.ground_truth == "normal" else Evidence(frame_times=(0.0,))
    )
    return ReviewLabel(record.video_id, record.ground_truth, evidence, "sim", float(i))


linear = classifier.linear_model()
print(f"linear stage (v{linear.version}): held-out accuracy {held_out_accuracy(linear):.2f}")

model = linear
reviews = []
for batch_end in (20, 40, 80, 120):
    while len(reviews) < batch_end:
        reviews.append(simulated_review(pool[len(reviews)], len(reviews)))
    model = classifier.retrain(
        reviews, records, taxonomy, classifier.TrainConfig(seed=0), base_version=model.version
    )
    meta = model.training_meta
    print(f"after {len(reviews):3d} reviews -> model v{model.version} "
          f"(loss {meta['final_loss']:.4f}, train acc {meta['train_accuracy']:.2f}): "
          f"held-out accuracy {held_out_accuracy(model):.2f}")

scores = np.array([classifier.predict(model, features[r.video_id]) for r in held_out])
truth = np.array([r.ground_truth != "normal" for r in held_out])
print(f"\nfinal score separation on held-out videos: "
      f"deviant mean {scores[truth].mean():.3f} vs normal mean {scores[~truth].mean():.3f}")
