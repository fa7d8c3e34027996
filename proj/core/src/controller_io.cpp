#include "swarmlab/controller_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "swarmlab/errors.hpp"
#include "swarmlab/fsm_text.hpp"
#include "swarmlab/text.hpp"

namespace swarmlab {

std::string controller_to_text(const Controller& controller) {
    if (const FsmDescriptor* fsm = std::get_if<FsmDescriptor>(&controller))
        return "# fsm-v1\n" + fsm_to_flags(*fsm) + "\n";
    const Genome& genome = std::get<Genome>(controller);
    validate(genome);
    std::string out = "# ann-v1\n";
    for (double g : genome.genes) out += format_double(g) + "\n";
    return out;
}

Controller controller_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) throw ParseError(0, "empty controller file");
    if (std::string_view(trim(header)) == "# fsm-v1") {
        std::string rest;
        std::string line;
        while (std::getline(in, line)) rest += line + "\n";
        return fsm_from_flags(rest);
    }
    if (std::string_view(trim(header)) == "# ann-v1") {
        Genome genome;
        std::string line;
        std::size_t count = 0;
        while (std::getline(in, line)) {
            const std::string_view sv = trim(line);
            if (sv.empty()) continue;
            if (count >= genome.genes.size())
                throw ParseError(count, "more than 50 weights");
            double v = 0.0;
            if (!try_parse_double(sv, v)) throw ParseError(count, "bad weight: " + line);
            if (!(v >= kGeneMin && v <= kGeneMax))
                throw ParseError(count, "weight outside [-5,5]: " + line);
            genome.genes[count++] = v;
        }
        if (count != genome.genes.size())
            throw ParseError(count, "expected 50 weights, got " + format_int(
                                        static_cast<long long>(count)));
        return genome;
    }
    throw ParseError(0, "unknown controller format tag: " + header);
}

Controller load_controller_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open controller file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return controller_from_text(buf.str());
}

void save_controller_file(const Controller& controller, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write controller file: " + path);
    out << controller_to_text(controller);
}

Method method_of(const Controller& controller) {
    return std::holds_alternative<FsmDescriptor>(controller) ? Method::Fsm : Method::Ann;
}

}  // namespace swarmlab
