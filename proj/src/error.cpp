#include "tangle/error.hpp"

#include <nlohmann/json.hpp>

namespace tangle {

namespace {

std::string compose(const std::string& kind, const std::string& detail, const std::vector<int>& idx) {
    std::string s = kind;
    if (!idx.empty()) {
        s += "(";
        for (size_t i = 0; i < idx.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(idx[i]);
        }
        s += ")";
    }
    if (!detail.empty()) s += ": " + detail;
    return s;
}

}  // namespace

Error::Error(std::string kind, std::string detail, std::vector<int> indices)
    : std::runtime_error(compose(kind, detail, indices)),
      kind_(std::move(kind)),
      detail_(std::move(detail)),
      indices_(std::move(indices)) {}

std::string Error::to_json() const {
    nlohmann::json j;
    j["error"] = kind_;
    j["detail"] = detail_;
    j["indices"] = indices_;
    return j.dump();
}

}  // namespace tangle
