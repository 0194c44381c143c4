#pragma once

#include <morfwork/features.hpp>
#include <morfwork/phonology.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace morfwork
{
	struct RootEntry
	{
		std::string root;
		Category category = Category::Noun;
		/// Root-final k surfaces as ğ before a vowel (ayak -> ayağın).
		bool finalStopSoftens = false;
		/// Root does not follow vowel harmony; harmony checks skip it.
		bool harmonyException = false;
		std::string gloss;

		/// Lexical spelling of the root; a softening final k is written K.
		std::u32string lexicalForm() const;
		std::string flagsText() const;

		bool operator==(const RootEntry&) const = default;
	};

	/// Root-word store: TSV rows `root<TAB>category<TAB>flags<TAB>gloss`.
	class Lexicon
	{
	public:
		static Lexicon parse(std::string_view tsv, const std::string& sourceName = "<lexicon>");
		static Lexicon load(const std::filesystem::path& path);

		/// Throws morfwork::Error on an invalid or duplicate entry.
		void add(RootEntry entry);

		const std::vector<RootEntry>& entries() const { return entries_; }
		std::size_t size() const { return entries_.size(); }
		bool empty() const { return entries_.empty(); }

		const RootEntry* find(std::string_view root, Category category) const;
		std::vector<const RootEntry*> find(std::string_view root) const;

		/// Entries whose root, or softened root (final k -> ğ), is a prefix of
		/// `word`; longest root first. `word` must already be lowercase.
		std::vector<const RootEntry*> candidateRoots(std::u32string_view word) const;

	private:
		std::vector<RootEntry> entries_;
		std::map<std::u32string, std::vector<std::size_t>> literal_;
		std::map<std::u32string, std::vector<std::size_t>> softened_;
	};
}
