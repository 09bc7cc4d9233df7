#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace i2l {

/// One named check outcome. `witness` is empty on pass and carries a short
/// human-readable locator (element labels, equation side, ...) on failure.
struct Verdict {
    std::string name;
    bool pass = false;
    std::string witness;
};

/// An ordered list of verdicts produced by a validator or classifier.
/// Reports are deterministic for a fixed input: same names, same order.
class Report {
public:
    void add(std::string name, bool pass, std::string witness = {});

    bool passed() const;
    const Verdict* find(std::string_view name) const;
    const std::vector<Verdict>& verdicts() const { return verdicts_; }

    /// One verdict per line: "NAME PASS" or "NAME FAIL  witness".
    std::string to_text() const;

private:
    std::vector<Verdict> verdicts_;
};

} // namespace i2l
