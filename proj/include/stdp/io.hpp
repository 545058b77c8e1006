#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "stdp/graph.hpp"
#include "stdp/solver.hpp"

namespace stdp {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// {"n": int, "edges": [[u, v, w], ...], "s": int, "t": int}, unscaled weights.
// Throws ParseError for malformed text and for graphs the builder rejects.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

std::string instance_to_json(const Instance& inst);

// Unscaled weight and both paths, or {"feasible": false}.
std::string solution_to_json(const std::optional<Solution>& sol);

// Negative edges dashed; the two solution paths drawn in blue and red.
std::string to_dot(const Instance& inst, const Solution* sol = nullptr);

std::string path_text(const Path& p);

}  // namespace stdp
