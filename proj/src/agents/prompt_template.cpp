#include "crs/agents/prompt_template.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "crs/errors.hpp"

namespace crs {

namespace {

std::string read_text_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot read " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool slot_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

}  // namespace

PromptTemplate PromptTemplate::load(const std::filesystem::path& file) {
    return PromptTemplate(read_text_file(file));
}

std::string PromptTemplate::render(const std::map<std::string, std::string>& slots) const {
    std::string out;
    out.reserve(text_.size());
    std::size_t i = 0;
    while (i < text_.size()) {
        const char c = text_[i];
        if (c == '{') {
            std::size_t j = i + 1;
            while (j < text_.size() && slot_char(text_[j])) ++j;
            if (j < text_.size() && text_[j] == '}' && j > i + 1) {
                const std::string name = text_.substr(i + 1, j - i - 1);
                const auto it = slots.find(name);
                if (it != slots.end()) {
                    out += it->second;
                    i = j + 1;
                    continue;
                }
            }
        }
        out += c;
        ++i;
    }
    return out;
}

PromptLibrary PromptLibrary::builtin() {
    PromptLibrary lib;
    lib.triplet_extraction_ = PromptTemplate(std::string(default_prompts::triplet_extraction()));
    lib.merge_duplicates_ = PromptTemplate(std::string(default_prompts::merge_duplicates()));
    lib.relation_extraction_ = PromptTemplate(std::string(default_prompts::relation_extraction()));
    lib.filter_characters_ = PromptTemplate(std::string(default_prompts::filter_characters()));
    lib.role_identification_ = PromptTemplate(std::string(default_prompts::role_identification()));
    lib.group_characters_ = PromptTemplate(std::string(default_prompts::group_characters()));
    return lib;
}

PromptLibrary PromptLibrary::load(const std::filesystem::path& dir) {
    PromptLibrary lib = builtin();
    const auto maybe = [&](const char* name, PromptTemplate& slot) {
        const auto file = dir / (std::string(name) + ".txt");
        if (std::filesystem::exists(file)) slot = PromptTemplate::load(file);
    };
    maybe("triplet_extraction", lib.triplet_extraction_);
    maybe("merge_duplicates", lib.merge_duplicates_);
    maybe("relation_extraction", lib.relation_extraction_);
    maybe("filter_characters", lib.filter_characters_);
    maybe("role_identification", lib.role_identification_);
    maybe("group_characters", lib.group_characters_);
    return lib;
}

}  // namespace crs
