#include <morfwork/error.hpp>
#include <morfwork/text.hpp>

#include <gtest/gtest.h>

using namespace morfwork;

TEST(Text, TurkishCaseFolding)
{
	EXPECT_EQ(text::lower(std::string_view("IŞIK")), "ışık");
	EXPECT_EQ(text::lower(std::string_view("İSTANBUL")), "istanbul");
	EXPECT_EQ(text::lower(std::string_view("Çocuğun ÖĞRETMEN Ü")), "çocuğun öğretmen ü");
}

TEST(Text, Utf8RoundTrip)
{
	const std::string s = "ağrıyor şehir";
	EXPECT_EQ(text::encode(text::decode(s)), s);
	EXPECT_EQ(text::decode(s).size(), 13u);
	EXPECT_THROW(text::decode("\xff\xfe"), Error);
}

TEST(Text, AsciiFoldMapsTurkishLettersToUpperAscii)
{
	EXPECT_EQ(text::asciiFold(std::string_view("kesilemedi çğıöşü")), "kesilemedi CGIOSU");
}

TEST(Text, EscapeRoundTrip)
{
	const std::string raw = "a:b|c,d=e+f%g\th";
	const auto esc = text::escape(raw, ":|,=+");
	EXPECT_EQ(esc.find_first_of(":|,=+\t"), std::string::npos);
	EXPECT_EQ(text::unescape(esc), raw);
	EXPECT_THROW(text::unescape("%4"), Error);
	EXPECT_THROW(text::unescape("%zz"), Error);
}

TEST(Text, SplitHelpers)
{
	auto parts = text::split("a\tb\t", '\t');
	ASSERT_EQ(parts.size(), 3u);
	EXPECT_EQ(parts[2], "");
	auto ws = text::splitWhitespace("  x  y\tz ");
	ASSERT_EQ(ws.size(), 3u);
	EXPECT_EQ(ws[1], "y");
	EXPECT_EQ(text::trim("  q "), "q");
}
