#include "qlab/report.hpp"

#include <sstream>

namespace qlab {

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::info: return "info";
    }
    return "?";
}

CheckRecord& Report::add(std::string name, CheckStatus status, int stage) {
    CheckRecord rec;
    rec.name = std::move(name);
    rec.status = status;
    rec.stage = stage;
    checks.push_back(std::move(rec));
    return checks.back();
}

void Report::append(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool Report::any_fail() const {
    for (const auto& c : checks)
        if (c.status == CheckStatus::fail) return true;
    return false;
}

const CheckRecord* Report::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["schema"] = schema;
    j["command"] = command;
    j["quantale"] = quantale;
    j["config"] = config;
    j["timestamp"] = timestamp;
    j["overall"] = any_fail() ? "fail" : "pass";
    auto& arr = j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json jc;
        jc["check"] = c.name;
        jc["status"] = to_string(c.status);
        if (c.stage >= 0) jc["stage"] = c.stage;
        jc["witnesses"] = c.witnesses;
        if (!c.note.empty()) jc["note"] = c.note;
        arr.push_back(std::move(jc));
    }
    return j;
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << command << " " << quantale;
    for (const auto& [k, v] : config) os << " " << k << "=" << v;
    os << "\n";
    for (const auto& c : checks) {
        os << "  [" << to_string(c.status) << "] " << c.name;
        if (c.stage >= 0) os << " (stage " << c.stage << ")";
        if (!c.note.empty()) os << " -- " << c.note;
        os << "\n";
        for (const auto& w : c.witnesses) os << "      witness: " << w << "\n";
    }
    os << (any_fail() ? "FAIL" : "PASS") << "\n";
    return os.str();
}

WitnessSink::~WitnessSink() {
    if (total_ > max_) {
        std::ostringstream os;
        os << total_ << " witnesses total, first " << max_ << " shown";
        if (!rec_.note.empty()) rec_.note += "; ";
        rec_.note += os.str();
    }
}

void WitnessSink::offer(std::string w) {
    if (total_ < max_) rec_.witnesses.push_back(std::move(w));
    ++total_;
}

}  // namespace qlab
