#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace qlab {

enum class CheckStatus { pass, fail, info };

const char* to_string(CheckStatus s);

/// One verification record: a named check, its outcome, and concrete
/// witnesses (counterexamples or required examples) in label form.
struct CheckRecord {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    int stage = -1;  // -1 when the check is not tied to a hierarchy stage
    std::vector<std::string> witnesses;
    std::string note;
};

struct Report {
    std::string schema = "qlab-report/1";
    std::string command;
    std::string quantale;
    std::map<std::string, std::string> config;
    std::string timestamp;
    std::vector<CheckRecord> checks;

    CheckRecord& add(std::string name, CheckStatus status, int stage = -1);
    void append(const Report& other);

    bool any_fail() const;
    const CheckRecord* find(const std::string& name) const;

    nlohmann::json to_json() const;
    std::string to_text() const;
};

/// Caps stored witnesses per check; callers pass every candidate and the
/// helper keeps the first `max` in the (already deterministic) call order,
/// counting the rest in the note.
class WitnessSink {
public:
    explicit WitnessSink(CheckRecord& rec, std::size_t max = 8) : rec_(rec), max_(max) {}
    ~WitnessSink();
    void offer(std::string w);
    std::size_t total() const { return total_; }

private:
    CheckRecord& rec_;
    std::size_t max_;
    std::size_t total_ = 0;
};

}  // namespace qlab
