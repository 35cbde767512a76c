package com.fixture.sm08_benign;

import android.content.ContentProvider;
import android.content.ContentValues;
import android.content.UriMatcher;
import android.database.Cursor;
import android.net.Uri;

public class NotesProvider extends ContentProvider {
    private static final String AUTHORITY = "com.fixture.notes";
    private static final UriMatcher MATCHER = new UriMatcher(UriMatcher.NO_MATCH);
    private static final int NOTES = 1;
    private static final int SECRET = 2;

    static {
        MATCHER.addURI(AUTHORITY, "notes", NOTES);
        MATCHER.addURI(AUTHORITY, "secret/*", SECRET);
    }

    @Override
    public boolean onCreate() {
        return true;
    }

    @Override
    public Cursor query(Uri uri, String[] projection, String selection, String[] args, String order) {
        switch (MATCHER.match(uri)) {
            case NOTES:
                return null;
            case SECRET:
                return null;
            default:
                throw new IllegalArgumentException("unknown uri " + uri);
        }
    }

    @Override
    public String getType(Uri uri) {
        return null;
    }

    @Override
    public Uri insert(Uri uri, ContentValues values) {
        return null;
    }

    @Override
    public int delete(Uri uri, String selection, String[] args) {
        return 0;
    }

    @Override
    public int update(Uri uri, ContentValues values, String selection, String[] args) {
        return 0;
    }
}
