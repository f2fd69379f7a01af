#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace flatact {

enum class CheckStatus { pass, fail, skipped };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::skipped;
  std::string detail;
};

/// Ordered checklist; the verdict is "accepted" exactly when every check passed.
struct VerificationReport {
  std::string kind;
  std::vector<CheckResult> checklist;
  std::map<std::string, std::string> witnesses;

  bool accepted() const {
    if (checklist.empty()) return false;
    for (const auto& c : checklist)
      if (c.status != CheckStatus::pass) return false;
    return true;
  }

  /// Name of the first failing check, if any.
  std::optional<std::string> first_failure() const {
    for (const auto& c : checklist)
      if (c.status == CheckStatus::fail) return c.name;
    return std::nullopt;
  }

  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checklist)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

// Runs named checks in a fixed order; after the first failure the rest are recorded as skipped.
class Checklist {
 public:
  Checklist(VerificationReport& report, std::vector<std::string> names) : report_(report) {
    for (auto& n : names) report_.checklist.push_back({std::move(n), CheckStatus::skipped, {}});
  }

  bool failed() const noexcept { return failed_; }

  void pass(const std::string& name, std::string detail = {}) { set(name, CheckStatus::pass, std::move(detail)); }
  void fail(const std::string& name, std::string detail) {
    set(name, CheckStatus::fail, std::move(detail));
    failed_ = true;
  }

 private:
  void set(const std::string& name, CheckStatus s, std::string detail) {
    for (auto& c : report_.checklist)
      if (c.name == name) {
        c.status = s;
        c.detail = std::move(detail);
        return;
      }
    throw std::logic_error("checklist: unknown check " + name);
  }

  VerificationReport& report_;
  bool failed_ = false;
};

}  // namespace detail

}  // namespace flatact
