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

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "bopelites/domain.hpp"

namespace fixture {

/// 1-D problem on [lo, hi] with one feature, both given as closures.
class FunctionProblem final : public bopelites::Problem {
public:
    FunctionProblem(std::function<double(double)> f, std::function<double(double)> g, double lo = 0.0,
                    double hi = 10.0)
        : f_(std::move(f)), g_(std::move(g)), domain_(bopelites::SearchDomain::interval(lo, hi)) {}

    const bopelites::SearchDomain& domain() const override { return domain_; }
    std::size_t feature_count() const override { return 1; }
    double objective(const bopelites::Point& x) const override { return f_(x[0]); }
    std::vector<double> features(const bopelites::Point& x) const override { return {g_(x[0])}; }

private:
    std::function<double(double)> f_;
    std::function<double(double)> g_;
    bopelites::SearchDomain domain_;
};

inline bopelites::Point pt(double v) { return bopelites::Point::Constant(1, v); }

} // namespace fixture
