#pragma once

#include <morfwork/features.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace morfwork
{
	/// Token with its [start, end) span counted in code points.
	struct Token
	{
		std::string text;
		std::size_t start = 0;
		std::size_t end = 0;

		bool operator==(const Token&) const = default;
	};

	/// Whitespace tokens with each leading/trailing punctuation character
	/// split off as its own token.
	std::vector<Token> tokenize(std::string_view sentence);
	/// True when the token has no letters or digits.
	bool isPunctuation(std::string_view token);

	struct Sentence
	{
		std::size_t id = 0;
		std::string text;
		std::vector<Token> tokens;

		bool operator==(const Sentence&) const = default;
	};

	/// Non-empty lines of a plain-text corpus, numbered from 0.
	std::vector<Sentence> readCorpus(std::string_view text);
	std::vector<Sentence> loadCorpus(const std::filesystem::path& path);

	struct TaggedSentence
	{
		Sentence sentence;
		/// One entry per token; absent for punctuation and unknown words.
		std::vector<std::optional<FeatureBundle>> readings;

		bool operator==(const TaggedSentence&) const = default;
	};

	struct TaggedCorpus
	{
		std::vector<TaggedSentence> sentences;

		std::size_t size() const { return sentences.size(); }
		bool empty() const { return sentences.empty(); }
		const TaggedSentence& at(std::size_t id) const;

		bool operator==(const TaggedCorpus&) const = default;
	};

	inline constexpr int kTaggedFormatVersion = 1;

	std::string serializeTagged(const TaggedCorpus& corpus);
	/// Throws VersionMismatch, ChecksumError or ParseError.
	TaggedCorpus parseTagged(std::string_view text, const std::string& sourceName = "<tagged>");
	void saveTagged(const TaggedCorpus& corpus, const std::filesystem::path& path);
	TaggedCorpus loadTagged(const std::filesystem::path& path);

	/// crc32 of `data` as 8 lowercase hex digits.
	std::string checksumHex(std::string_view data);

	std::string readFile(const std::filesystem::path& path);
	/// Writes via a temporary file and rename.
	void writeFile(const std::filesystem::path& path, std::string_view data);
}
