#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace morfwork
{
	class Error : public std::runtime_error
	{
	public:
		using std::runtime_error::runtime_error;
	};

	/// Malformed input document. Line and column are 1-based; 0 means unknown.
	class ParseError : public Error
	{
	public:
		ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& message);

		const std::string& source() const { return source_; }
		std::size_t line() const { return line_; }
		std::size_t column() const { return column_; }
		const std::string& detail() const { return detail_; }

	private:
		std::string source_;
		std::size_t line_;
		std::size_t column_;
		std::string detail_;
	};

	class VersionMismatch : public Error
	{
	public:
		using Error::Error;
	};

	class ChecksumError : public Error
	{
	public:
		using Error::Error;
	};

	class UnknownWord : public Error
	{
	public:
		explicit UnknownWord(const std::string& word)
			: Error("unknown word: " + word), word_(word) {}
		const std::string& word() const { return word_; }

	private:
		std::string word_;
	};

	class IllegalMorphotactics : public Error
	{
	public:
		using Error::Error;
	};

	class NoRealization : public Error
	{
	public:
		using Error::Error;
	};

	class UnknownFeatureValue : public Error
	{
	public:
		using Error::Error;
	};

	class NoAnalysis : public Error
	{
	public:
		using Error::Error;
	};

	class OutOfRange : public Error
	{
	public:
		using Error::Error;
	};

	class UnresolvedTokens : public Error
	{
	public:
		using Error::Error;
	};
}

namespace morfwork
{
	/// Structurally invalid search query (empty, unknown field, duplicate field).
	class InvalidQuery : public Error
	{
	public:
		using Error::Error;
	};
}
