#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tangle {

// Named failure. `kind` is one of the fixed identifiers (BadEntry, ParseError, ...),
// `indices` carries offending positions where there are any.
class Error : public std::runtime_error {
public:
    Error(std::string kind, std::string detail, std::vector<int> indices = {});

    const std::string& kind() const { return kind_; }
    const std::string& detail() const { return detail_; }
    const std::vector<int>& indices() const { return indices_; }

    // Single-line JSON object: {"error": kind, "detail": ..., "indices": [...]}
    std::string to_json() const;

private:
    std::string kind_;
    std::string detail_;
    std::vector<int> indices_;
};

}  // namespace tangle
