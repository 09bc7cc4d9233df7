#include "i2l/report.hpp"

#include <algorithm>

namespace i2l {

void Report::add(std::string name, bool pass, std::string witness)
{
    verdicts_.push_back(Verdict{std::move(name), pass, std::move(witness)});
}

bool Report::passed() const
{
    return std::all_of(verdicts_.begin(), verdicts_.end(),
                       [](const Verdict& v) { return v.pass; });
}

const Verdict* Report::find(std::string_view name) const
{
    for (const Verdict& v : verdicts_) {
        if (v.name == name)
            return &v;
    }
    return nullptr;
}

std::string Report::to_text() const
{
    std::string out;
    for (const Verdict& v : verdicts_) {
        out += v.name;
        out += v.pass ? " PASS" : " FAIL";
        if (!v.pass && !v.witness.empty()) {
            out += "  ";
            out += v.witness;
        }
        out += '\n';
    }
    return out;
}

} // namespace i2l
