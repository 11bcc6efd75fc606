// Copyright 2026 The bopelites Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bopelites/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bopelites/errors.hpp"
#include "bopelites/normal.hpp"

namespace bopelites {

double expected_improvement(const Posterior& post, double incumbent) {
    const double gap = post.mean - incumbent;
    if (post.sd < kDegenerateSd) {
        return std::max(gap, 0.0);
    }
    const double z = gap / post.sd;
    return std::max(gap * normal_cdf(z) + post.sd * normal_pdf(z), 0.0);
}

double niche_weighted_ei(const Posterior& objective, std::span<const Posterior> features, const NicheId& niche,
                         const EliteArchive& archive) {
    const double p = archive.grid().membership_probability(features, niche);
    if (p == 0.0) {
        return 0.0;
    }
    return p * expected_improvement(objective, archive.elite_value(niche.index));
}

AcquisitionScore ejie(const Posterior& objective, std::span<const Posterior> features,
                      const EliteArchive& archive) {
    AcquisitionScore score;
    score.per_niche = archive.grid().all_membership_probabilities(features);
    for (std::size_t c = 0; c < score.per_niche.size(); ++c) {
        double& term = score.per_niche[c];
        if (term > 0.0) {
            term *= expected_improvement(objective, archive.elite_value(c));
        }
        score.total += term;
    }
    return score;
}

AcquisitionScore ejie(const Point& x, const GpModel& objective_model, std::span<const GpModel> feature_models,
                      const EliteArchive& archive) {
    std::vector<Posterior> features;
    features.reserve(feature_models.size());
    for (const GpModel& m : feature_models) {
        features.push_back(m.predict(x));
    }
    return ejie(objective_model.predict(x), features, archive);
}

std::size_t argmax_acquisition(std::size_t candidate_count, const std::function<double(std::size_t)>& score,
                               const std::vector<bool>& excluded) {
    if (!excluded.empty() && excluded.size() != candidate_count) {
        throw InvalidArgument("exclusion mask does not match the candidate count");
    }
    std::size_t best = candidate_count;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidate_count; ++i) {
        if (!excluded.empty() && excluded[i]) {
            continue;
        }
        const double s = score(i);
        if (best == candidate_count || s > best_score) {
            best = i;
            best_score = s;
        }
    }
    if (best == candidate_count) {
        throw ExhaustedError("every candidate has already been evaluated; budget exceeds the discretisation");
    }
    return best;
}

} // namespace bopelites
