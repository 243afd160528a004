#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace crs {

// Template text with {name} slots. Only known slot names are substituted;
// anything else (stray braces, unknown names) passes through untouched, so
// arbitrary narrative text is safe inside slot values and templates.
class PromptTemplate {
public:
    PromptTemplate() = default;
    explicit PromptTemplate(std::string text) : text_(std::move(text)) {}

    static PromptTemplate load(const std::filesystem::path& file);

    std::string render(const std::map<std::string, std::string>& slots) const;
    const std::string& text() const { return text_; }

private:
    std::string text_;
};

// The six templates the pipeline renders. Built-in copies keep zero-config
// runs working; a template directory overrides individual files.
class PromptLibrary {
public:
    static PromptLibrary builtin();

    // Loads <dir>/<name>.txt for every template name, falling back to the
    // built-in text for files that are absent.
    static PromptLibrary load(const std::filesystem::path& dir);

    const PromptTemplate& triplet_extraction() const { return triplet_extraction_; }
    const PromptTemplate& merge_duplicates() const { return merge_duplicates_; }
    const PromptTemplate& relation_extraction() const { return relation_extraction_; }
    const PromptTemplate& filter_characters() const { return filter_characters_; }
    const PromptTemplate& role_identification() const { return role_identification_; }
    const PromptTemplate& group_characters() const { return group_characters_; }

private:
    PromptTemplate triplet_extraction_;
    PromptTemplate merge_duplicates_;
    PromptTemplate relation_extraction_;
    PromptTemplate filter_characters_;
    PromptTemplate role_identification_;
    PromptTemplate group_characters_;
};

namespace default_prompts {
// Raw template texts; the files under prompts/ carry the same content.
std::string_view triplet_extraction();
std::string_view merge_duplicates();
std::string_view relation_extraction();
std::string_view filter_characters();
std::string_view role_identification();
std::string_view group_characters();
}  // namespace default_prompts

}  // namespace crs
