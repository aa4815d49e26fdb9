#include "hqnn/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hqnn/error.hpp"
#include "hqnn/text.hpp"

namespace hqnn {

namespace {

// Bit-level description of a Pauli string: P|i> = phase(i) |i ^ flip>, with
// phase(i) = i^{n_y} * (-1)^{popcount(i & sign)}.
struct TermMasks {
    std::size_t flip = 0;
    std::size_t sign = 0;
    unsigned n_y = 0;
};

TermMasks masks_of(const PauliTerm& term) {
    TermMasks m;
    const std::size_t n = term.axes.size();
    for (std::size_t q = 0; q < n; ++q) {
        const std::size_t bit = std::size_t{1} << (n - 1 - q);
        switch (term.axes[q]) {
        case PauliAxis::I: break;
        case PauliAxis::X: m.flip |= bit; break;
        case PauliAxis::Y:
            m.flip |= bit;
            m.sign |= bit;
            ++m.n_y;
            break;
        case PauliAxis::Z: m.sign |= bit; break;
        }
    }
    return m;
}

Amplitude i_power(unsigned k) {
    switch (k % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

double parity_sign(std::size_t bits) { return (std::popcount(bits) & 1) ? -1.0 : 1.0; }

void check_term_width(const PauliTerm& term, std::size_t dim) {
    if (term.axes.empty() || (std::size_t{1} << term.axes.size()) != dim) {
        throw std::invalid_argument("Pauli term on " + std::to_string(term.axes.size()) +
                                    " qubits does not match state dimension " +
                                    std::to_string(dim));
    }
}

} // namespace

char to_char(PauliAxis axis) {
    switch (axis) {
    case PauliAxis::I: return 'I';
    case PauliAxis::X: return 'X';
    case PauliAxis::Y: return 'Y';
    case PauliAxis::Z: return 'Z';
    }
    return '?';
}

std::optional<PauliAxis> axis_from_char(char c) {
    switch (c) {
    case 'I': return PauliAxis::I;
    case 'X': return PauliAxis::X;
    case 'Y': return PauliAxis::Y;
    case 'Z': return PauliAxis::Z;
    default: return std::nullopt;
    }
}

bool PauliTerm::is_identity() const noexcept {
    return std::all_of(axes.begin(), axes.end(), [](PauliAxis a) { return a == PauliAxis::I; });
}

std::string PauliTerm::axis_string() const {
    std::string s;
    s.reserve(axes.size());
    for (auto a : axes) s.push_back(to_char(a));
    return s;
}

PauliHamiltonian::PauliHamiltonian(std::size_t n_qubits, std::vector<PauliTerm> terms,
                                   std::optional<double> bond_length)
    : n_qubits_(n_qubits), terms_(std::move(terms)), bond_length_(bond_length) {
    if (n_qubits_ < 1 || n_qubits_ > kMaxStateQubits) {
        throw std::invalid_argument("Hamiltonian qubit count " + std::to_string(n_qubits_) +
                                    " outside [1, " + std::to_string(kMaxStateQubits) + "]");
    }
    for (const auto& t : terms_) {
        if (t.axes.size() != n_qubits_) {
            throw std::invalid_argument("term " + t.axis_string() + " has length " +
                                        std::to_string(t.axes.size()) + ", expected " +
                                        std::to_string(n_qubits_));
        }
        if (!std::isfinite(t.coefficient)) {
            throw std::invalid_argument("term " + t.axis_string() + " has a non-finite coefficient");
        }
    }
    if (bond_length_ && !std::isfinite(*bond_length_)) {
        throw std::invalid_argument("bond_length is not finite");
    }
}

PauliHamiltonian parse_hamiltonian(std::istream& in) {
    std::optional<std::size_t> n_qubits;
    std::optional<double> bond_length;
    std::vector<PauliTerm> terms;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = text::trim(raw);
        if (line.empty() || line.front() == '#') continue;

        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError(line_no, "expected '<key>: <value>', got '" + std::string(line) + "'");
        }
        const std::string_view key = text::trim(line.substr(0, colon));
        const std::string_view value = text::trim(line.substr(colon + 1));

        if (key == "qubits") {
            if (n_qubits) throw ParseError(line_no, "duplicate qubits header");
            if (!terms.empty()) throw ParseError(line_no, "qubits header after term lines");
            const auto n = text::parse_integer(value);
            if (!n || *n < 1 || static_cast<std::size_t>(*n) > kMaxStateQubits) {
                throw ParseError(line_no, "qubits must be an integer in [1, " +
                                              std::to_string(kMaxStateQubits) + "], got '" +
                                              std::string(value) + "'");
            }
            n_qubits = static_cast<std::size_t>(*n);
        } else if (key == "bond_length") {
            if (bond_length) throw ParseError(line_no, "duplicate bond_length");
            bond_length = text::parse_double(value);
            if (!bond_length) {
                throw ParseError(line_no, "bond_length '" + std::string(value) +
                                              "' is not a finite real number");
            }
        } else if (key == "term") {
            if (!n_qubits) throw ParseError(line_no, "term before the qubits header (missing qubits header)");
            const auto fields = text::split(value, " \t");
            if (fields.size() != 2) {
                throw ParseError(line_no, "term needs '<coefficient> <axes>', got '" +
                                              std::string(value) + "'");
            }
            const auto coefficient = text::parse_double(fields[0]);
            if (!coefficient) {
                throw ParseError(line_no, "coefficient '" + std::string(fields[0]) +
                                              "' is not a finite real number");
            }
            PauliTerm term;
            term.coefficient = *coefficient;
            for (char c : fields[1]) {
                const auto axis = axis_from_char(c);
                if (!axis) {
                    throw ParseError(line_no, std::string("unknown Pauli axis '") + c + "' in '" +
                                                  std::string(fields[1]) + "'");
                }
                term.axes.push_back(*axis);
            }
            if (term.axes.size() != *n_qubits) {
                throw ParseError(line_no, "axis string '" + std::string(fields[1]) + "' has length " +
                                              std::to_string(term.axes.size()) + ", expected " +
                                              std::to_string(*n_qubits));
            }
            terms.push_back(std::move(term));
        } else {
            throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
        }
    }
    if (!n_qubits) throw ParseError(line_no == 0 ? 1 : line_no, "missing qubits header");
    return PauliHamiltonian(*n_qubits, std::move(terms), bond_length);
}

PauliHamiltonian parse_hamiltonian(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_hamiltonian(in);
}

std::string format_hamiltonian(const PauliHamiltonian& h) {
    std::string out = "qubits: " + std::to_string(h.n_qubits()) + "\n";
    if (h.bond_length()) out += "bond_length: " + text::format_double(*h.bond_length()) + "\n";
    for (const auto& t : h.terms()) {
        out += "term: " + text::format_double(t.coefficient) + " " + t.axis_string() + "\n";
    }
    return out;
}

PauliHamiltonian read_hamiltonian_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    try {
        return parse_hamiltonian(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
}

void write_hamiltonian_file(const std::filesystem::path& path, const PauliHamiltonian& h) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << format_hamiltonian(h);
    if (!out) throw DataError("write failed for " + path.string());
}

PauliHamiltonian normalize(const PauliHamiltonian& h) {
    std::vector<PauliTerm> merged;
    std::map<std::vector<PauliAxis>, std::size_t> index;
    for (const auto& t : h.terms()) {
        const auto [it, inserted] = index.try_emplace(t.axes, merged.size());
        if (inserted) {
            merged.push_back(t);
        } else {
            merged[it->second].coefficient += t.coefficient;
        }
    }
    return PauliHamiltonian(h.n_qubits(), std::move(merged), h.bond_length());
}

PauliHamiltonian scaled(const PauliHamiltonian& h, double alpha) {
    auto terms = h.terms();
    for (auto& t : terms) t.coefficient *= alpha;
    return PauliHamiltonian(h.n_qubits(), std::move(terms), h.bond_length());
}

PauliHamiltonian operator+(const PauliHamiltonian& lhs, const PauliHamiltonian& rhs) {
    if (lhs.n_qubits() != rhs.n_qubits()) {
        throw std::invalid_argument("cannot add Hamiltonians on " + std::to_string(lhs.n_qubits()) +
                                    " and " + std::to_string(rhs.n_qubits()) + " qubits");
    }
    auto terms = lhs.terms();
    terms.insert(terms.end(), rhs.terms().begin(), rhs.terms().end());
    return PauliHamiltonian(lhs.n_qubits(), std::move(terms), lhs.bond_length());
}

void apply_term(const PauliTerm& term, std::span<const Amplitude> psi, std::span<Amplitude> out) {
    check_term_width(term, psi.size());
    if (out.size() != psi.size()) {
        throw std::invalid_argument("output buffer size does not match state dimension");
    }
    const TermMasks m = masks_of(term);
    const Amplitude c = term.coefficient * i_power(m.n_y);
    for (std::size_t i = 0; i < psi.size(); ++i) {
        out[i ^ m.flip] = c * parity_sign(i & m.sign) * psi[i];
    }
}

StateVector apply_term(const PauliTerm& term, const StateVector& psi) {
    std::vector<Amplitude> out(psi.dim());
    apply_term(term, psi.amplitudes(), out);
    return StateVector::from_amplitudes(std::move(out));
}

double expectation(const PauliHamiltonian& h, const StateVector& psi) {
    if (h.n_qubits() != psi.n_qubits()) {
        throw std::invalid_argument("Hamiltonian has " + std::to_string(h.n_qubits()) +
                                    " qubits, state has " + std::to_string(psi.n_qubits()));
    }
    const auto amps = psi.amplitudes();
    double norm_sq = 0.0;
    for (const auto& a : amps) norm_sq += std::norm(a);

    double total = 0.0;
    for (const auto& t : h.terms()) {
        if (t.is_identity()) {
            total += t.coefficient * norm_sq;
            continue;
        }
        const TermMasks m = masks_of(t);
        Amplitude acc{0.0, 0.0};
        for (std::size_t i = 0; i < amps.size(); ++i) {
            acc += std::conj(amps[i ^ m.flip]) * parity_sign(i & m.sign) * amps[i];
        }
        // <P> is real for Hermitian P; the imaginary part is rounding residue.
        total += t.coefficient * (i_power(m.n_y) * acc).real();
    }
    return total;
}

Eigen::MatrixXcd to_dense(const PauliHamiltonian& h) {
    if (h.n_qubits() > kMaxDenseQubits) {
        throw std::invalid_argument("dense materialization limited to " +
                                    std::to_string(kMaxDenseQubits) + " qubits, got " +
                                    std::to_string(h.n_qubits()));
    }
    const std::size_t dim = std::size_t{1} << h.n_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (const auto& t : h.terms()) {
        const TermMasks tm = masks_of(t);
        const Amplitude c = t.coefficient * i_power(tm.n_y);
        for (std::size_t col = 0; col < dim; ++col) {
            const auto row = col ^ tm.flip;
            m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) +=
                c * parity_sign(col & tm.sign);
        }
    }
    return m;
}

PauliOperator::PauliOperator(const PauliHamiltonian& h) : n_qubits_(h.n_qubits()) {
    const std::size_t dim = std::size_t{1} << n_qubits_;
    std::map<std::size_t, std::size_t> by_flip;
    for (const auto& t : h.terms()) {
        const TermMasks m = masks_of(t);
        const auto [it, inserted] = by_flip.try_emplace(m.flip, groups_.size());
        if (inserted) groups_.push_back(Group{m.flip, std::vector<Amplitude>(dim)});
        auto& weights = groups_[it->second].weights;
        const Amplitude c = t.coefficient * i_power(m.n_y);
        for (std::size_t i = 0; i < dim; ++i) weights[i] += c * parity_sign(i & m.sign);
    }
}

double PauliOperator::expectation(const StateVector& psi) const {
    if (psi.n_qubits() != n_qubits_) {
        throw std::invalid_argument("operator has " + std::to_string(n_qubits_) +
                                    " qubits, state has " + std::to_string(psi.n_qubits()));
    }
    const auto amps = psi.amplitudes();
    double total = 0.0;
    for (const auto& g : groups_) {
        if (g.flip == 0) {
            for (std::size_t i = 0; i < amps.size(); ++i) total += g.weights[i].real() * std::norm(amps[i]);
            continue;
        }
        Amplitude acc{0.0, 0.0};
        for (std::size_t i = 0; i < amps.size(); ++i) {
            acc += std::conj(amps[i ^ g.flip]) * g.weights[i] * amps[i];
        }
        total += acc.real();
    }
    return total;
}

void PauliOperator::apply(std::span<const Amplitude> psi, std::span<Amplitude> out) const {
    const std::size_t dim = std::size_t{1} << n_qubits_;
    if (psi.size() != dim || out.size() != dim) {
        throw std::invalid_argument("buffer size does not match operator dimension");
    }
    std::fill(out.begin(), out.end(), Amplitude{0.0, 0.0});
    for (const auto& g : groups_) {
        for (std::size_t i = 0; i < dim; ++i) out[i ^ g.flip] += g.weights[i] * psi[i];
    }
}

} // namespace hqnn
